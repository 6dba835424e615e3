#include "mmf/limitlaw.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace mmf {

namespace {

// memoized helpers for the hot sampling paths
double cached_zeta(int dim) {
  static std::mutex mu;
  static std::map<int, double> values;
  std::lock_guard<std::mutex> g(mu);
  auto it = values.find(dim);
  if (it != values.end()) return it->second;
  double z = zeta(dim, 1e-12);
  values.emplace(dim, z);
  return z;
}

std::shared_ptr<const std::vector<std::int64_t>> cached_primes(std::int64_t limit) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const std::vector<std::int64_t>>> lists;
  std::lock_guard<std::mutex> g(mu);
  auto it = lists.find(limit);
  if (it != lists.end()) return it->second;
  auto p = std::make_shared<const std::vector<std::int64_t>>(primes_up_to(limit));
  lists.emplace(limit, p);
  return p;
}

}  // namespace

int sample_geometric(std::int64_t p, RandomStream& rng) {
  if (p < 2) throw_config("sample_geometric: p must be >= 2");
  double u = rng.uniform01();  // in (0,1) by the stream contract
  double g = std::floor(std::log(u) / -std::log(static_cast<double>(p)));
  if (g < 0) return 0;
  return static_cast<int>(g);
}

GeometricArraySample sample_geometric_array(const LimitSampleConfig& cfg, RandomStream& rng) {
  if (cfg.dim < 1) throw_config("sample_geometric_array: dim must be >= 1");
  if (cfg.prime_cutoff < 2) throw_config("sample_geometric_array: cutoff must be >= 2");
  GeometricArraySample out;
  out.prime_cutoff = cfg.prime_cutoff;
  out.dim = cfg.dim;
  auto primes_ptr = cached_primes(cfg.prime_cutoff);
  const auto& primes = *primes_ptr;
  std::vector<std::int32_t> e(static_cast<std::size_t>(cfg.dim));
  for (std::int64_t p : primes) {
    bool any = false;
    for (int k = 0; k < cfg.dim; ++k) {
      e[k] = static_cast<std::int32_t>(sample_geometric(p, rng));
      if (e[k] > 0) any = true;
    }
    if (any) out.nonzero.emplace_back(p, e);
  }
  return out;
}

FInfinitySample sample_F_infinity(const MultiplicativeFunction& f, const LimitSampleConfig& cfg,
                                  RandomStream& rng) {
  if (f.dim() != cfg.dim) throw_config("sample_F_infinity: dimension mismatch");
  if (cfg.dim < 2) throw_config("sample_F_infinity: requires d >= 2");
  auto primes_ptr = cached_primes(cfg.prime_cutoff);
  const auto& primes = *primes_ptr;
  std::vector<std::int32_t> e(static_cast<std::size_t>(cfg.dim));
  FInfinitySample out;
  out.value = Value::exact(Rational(1));
  for (std::int64_t p : primes) {
    bool any = false;
    for (int k = 0; k < cfg.dim; ++k) {
      e[k] = static_cast<std::int32_t>(sample_geometric(p, rng));
      if (e[k] > 0) any = true;
    }
    if (!any) continue;  // kernel value 1 at the zero tuple
    Value v = f.kernel(p, e);
    if (v.is_zero()) {
      out.hit_zero = true;
      out.value = v;
      return out;
    }
    out.value = out.value * v;
  }
  return out;
}

double f_infinity_tail_bound(int dim, std::int64_t prime_cutoff) {
  if (dim < 1 || prime_cutoff < 2) throw_config("f_infinity_tail_bound: bad arguments");
  std::int64_t far = std::max<std::int64_t>(prime_cutoff * 10, 1'000'000);
  auto primes_ptr = cached_primes(far);
  const auto& primes = *primes_ptr;
  double sum = 0;
  for (std::int64_t p : primes)
    if (p > prime_cutoff) sum += 1.0 / (static_cast<double>(p) * static_cast<double>(p));
  sum += 1.0 / static_cast<double>(far);  // integral bound for everything beyond the sieve
  double events = dim * (dim - 1) / 2.0 + dim;
  return events * sum;
}

double zeta_law_pmf(int dim, std::int64_t j) {
  if (dim < 2) throw_numeric("zeta_law_pmf: requires d >= 2 (zeta(1) diverges)");
  if (j < 1) throw_config("zeta_law_pmf: j must be >= 1");
  return 1.0 / (cached_zeta(dim) * std::pow(static_cast<double>(j), dim));
}

namespace {

// sum_{k > j} k^-d via Euler-Maclaurin, accurate to ~1e-16 relative for j >= 64
long double zeta_tail(long double j, int d) {
  long double inv = 1.0L / j;
  long double jd = std::pow(j, -static_cast<long double>(d));
  return jd * j / (d - 1) - jd / 2 + d * jd * inv / 12 -
         d * (d + 1) * (d + 2) * jd * inv * inv * inv / 720;
}

}  // namespace

ZetaLawSampler::ZetaLawSampler(int dim) : dim_(dim) {
  if (dim < 2) throw_numeric("ZetaLawSampler: requires d >= 2");
  zeta_d_ = zeta(dim, 1e-13);
  constexpr std::size_t kTableCap = 1 << 20;
  long double acc = 0.0L;
  for (std::size_t j = 1; j <= kTableCap; ++j) {
    acc += std::pow(static_cast<long double>(j), -static_cast<long double>(dim)) / zeta_d_;
    cdf_.push_back(static_cast<double>(acc));
    if (1.0L - acc < 1e-12L) break;
  }
}

std::int64_t ZetaLawSampler::draw(RandomStream& rng) const {
  double u = rng.uniform01();
  if (u <= cdf_.back()) {
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
  }
  // analytic tail inversion: find the smallest j with P{J > j} < 1 - u
  long double target = 1.0L - static_cast<long double>(u);  // tail mass to the right
  std::int64_t lo = static_cast<std::int64_t>(cdf_.size());
  std::int64_t hi = lo * 2;
  while (zeta_tail(static_cast<long double>(hi), dim_) / zeta_d_ >= target) {
    hi *= 2;
    if (hi > (std::int64_t(1) << 60)) break;
  }
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (zeta_tail(static_cast<long double>(mid), dim_) / zeta_d_ >= target)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

double gcd_limit_moment(int dim, double s) {
  if (dim < 2) throw_numeric("gcd_limit_moment: requires d >= 2");
  if (!(s < dim - 1)) throw_numeric("gcd_limit_moment: moment infinite for s >= d-1");
  if (s == 0.0) return 1.0;
  return zeta(dim - s, 1e-12) / zeta(dim, 1e-12);
}

}  // namespace mmf
