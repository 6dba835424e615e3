#ifndef MMF_LIMITLAW_HPP
#define MMF_LIMITLAW_HPP

#include <cstdint>
#include <vector>

#include "mmf/multfunc.hpp"
#include "mmf/rng.hpp"

namespace mmf {

// Samplers for the limit objects: the independent geometric exponent array
// (G_1(p),...,G_d(p)) with tail P{G >= j} = p^-j, the truncated limit product
// F_inf over primes below a cutoff, and the zeta law P{J = j} = 1/(zeta(d) j^d).

// One geometric variate by inversion: floor(log U / log(1/p)) for U in (0,1).
int sample_geometric(std::int64_t p, RandomStream& rng);

struct LimitSampleConfig {
  std::int64_t prime_cutoff = 1000;
  int dim = 2;
};

struct GeometricArraySample {
  std::int64_t prime_cutoff = 0;
  int dim = 0;
  // only primes with a nonzero exponent tuple; sorted by prime
  std::vector<std::pair<std::int64_t, std::vector<std::int32_t>>> nonzero;
};

GeometricArraySample sample_geometric_array(const LimitSampleConfig& cfg, RandomStream& rng);

// Truncated product over p <= cutoff of kernel values at sampled exponents.
// hit_zero flags a kernel value of 0 (the product is then exactly 0).
struct FInfinitySample {
  Value value;
  bool hit_zero = false;
};
FInfinitySample sample_F_infinity(const MultiplicativeFunction& f, const LimitSampleConfig& cfg,
                                  RandomStream& rng);

// Probability bound that some prime beyond the cutoff carries two nonzero
// coordinates or one coordinate >= 2: sum_{p>P} (d(d-1)/2 + d) p^-2.
double f_infinity_tail_bound(int dim, std::int64_t prime_cutoff);

// 1/(zeta(d) j^d), d >= 2
double zeta_law_pmf(int dim, std::int64_t j);

// Exact inverse-CDF sampler: a precomputed CDF table, extended by analytic
// (Euler-Maclaurin) tail inversion for the far tail.
class ZetaLawSampler {
 public:
  explicit ZetaLawSampler(int dim);
  std::int64_t draw(RandomStream& rng) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  double zeta_d_;
  std::vector<double> cdf_;  // cdf_[j-1] = P{J <= j}
};

// E[J^s] = zeta(d-s)/zeta(d) for s < d-1
double gcd_limit_moment(int dim, double s);

}  // namespace mmf

#endif
