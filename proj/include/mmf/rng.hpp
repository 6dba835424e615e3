#ifndef MMF_RNG_HPP
#define MMF_RNG_HPP

#include <cstdint>
#include <random>

namespace mmf {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seeded random stream. Workers derive independent streams via fork(i), so a
// parallel run is reproducible from (base_seed, worker_index) alone.
// uniform01 maps 53 engine bits onto the open interval (0,1); the bit-level
// contract is u = (bits53 + 0.5) * 2^-53, which never returns 0 or 1.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : base_(seed), eng_(splitmix64(seed)) {}

  RandomStream fork(std::uint64_t stream_id) const {
    return RandomStream(splitmix64(base_ ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1))));
  }

  std::uint64_t seed() const { return base_; }

  std::uint64_t next_u64() { return eng_(); }

  double uniform01() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

  // unbiased integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t threshold = (0ULL - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = eng_();
      if (r >= threshold) return r % n;
    }
  }

  // inclusive range
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t base_;
  std::mt19937_64 eng_;
};

}  // namespace mmf

#endif
