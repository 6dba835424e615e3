#ifndef MMF_ARITH_HPP
#define MMF_ARITH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mmf/rational.hpp"

namespace mmf {

// Sparse prime-exponent map of an integer (or of a per-prime exponent tuple).
// Entries are sorted by prime; exponents may be negative, in which case the
// vector represents an exact rational prod p^e.  The empty vector is 1.
struct PrimeExponentVector {
  std::vector<std::pair<std::int64_t, std::int32_t>> entries;

  int exponent_of(std::int64_t p) const {
    for (const auto& [q, e] : entries)
      if (q == p) return e;
    return 0;
  }

  bool operator==(const PrimeExponentVector& o) const { return entries == o.entries; }

  // prod p^e as an integer; requires all exponents nonnegative
  std::int64_t reconstruct() const;

  // prod p^e as an exact fraction (negative exponents allowed)
  Rational to_rational() const;
};

// coordinate-wise min drops primes absent from any input vector
PrimeExponentVector exponent_min(std::span<const PrimeExponentVector> vs);
PrimeExponentVector exponent_max(std::span<const PrimeExponentVector> vs);
PrimeExponentVector exponent_sum(std::span<const PrimeExponentVector> vs);

// Smallest-prime-factor sieve; the single factorization path for everything.
// Immutable after construction and safe for concurrent reads.
class SpfTable {
 public:
  explicit SpfTable(std::int64_t limit, std::int64_t memory_budget_bytes = kDefaultBudget);

  std::int64_t limit() const { return limit_; }

  std::int64_t spf(std::int64_t n) const;  // smallest prime factor, 2 <= n <= limit

  PrimeExponentVector factorize(std::int64_t n) const;
  void factorize_into(std::int64_t n, PrimeExponentVector& out) const;

  // exponent of p in n (p prime, n <= limit)
  int lambda_p(std::int64_t n, std::int64_t p) const;

  const std::vector<std::int64_t>& primes() const { return primes_; }

  static constexpr std::int64_t kDefaultLimit = 10'000'000;
  static constexpr std::int64_t kDefaultBudget = std::int64_t(1) << 30;

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int64_t> primes_;
};

// all primes <= limit, ascending (plain Eratosthenes, independent of SpfTable)
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

// Riemann zeta for real s > 1: direct summation of N terms plus the integral
// tail bound N^(1-s)/(s-1), with N chosen so the relative error is <= rel_tol.
double zeta(double s, double rel_tol = 1e-10);

}  // namespace mmf

#endif
