#ifndef MMF_MULTFUNC_HPP
#define MMF_MULTFUNC_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mmf/arith.hpp"
#include "mmf/domain.hpp"
#include "mmf/rational.hpp"

namespace mmf {

// Kernel/evaluation value: exact rational fast path, complex doubles otherwise.
// Products of exact values stay exact; anything touching a complex value is
// complex from then on.
class Value {
 public:
  Value() : exact_(true), rat_(1) {}
  static Value exact(Rational r) {
    Value v;
    v.exact_ = true;
    v.rat_ = r;
    return v;
  }
  static Value complex(std::complex<double> z) {
    Value v;
    v.exact_ = false;
    v.z_ = z;
    return v;
  }

  bool is_exact() const { return exact_; }
  const Rational& rational() const {
    if (!exact_) throw_numeric("value is not exact");
    return rat_;
  }
  std::complex<double> as_complex() const {
    return exact_ ? std::complex<double>(rat_.to_double(), 0.0) : z_;
  }
  bool is_zero() const { return exact_ ? rat_.is_zero() : (z_ == std::complex<double>(0, 0)); }

  Value operator*(const Value& o) const {
    if (exact_ && o.exact_) return exact(rat_ * o.rat_);
    return complex(as_complex() * o.as_complex());
  }

  std::string to_string() const;

 private:
  bool exact_;
  Rational rat_;
  std::complex<double> z_{0, 0};
};

// A multivariate multiplicative function, represented by its prime-power
// kernel (p, (e_1..e_d)) -> F(p^e_1, ..., p^e_d).  The kernel is never called
// with the all-zero tuple (that value is 1 by multiplicativity).
using Kernel = std::function<Value(std::int64_t p, std::span<const std::int32_t> exponents)>;

class MultiplicativeFunction {
 public:
  MultiplicativeFunction(int dim, std::string name, Kernel kernel)
      : dim_(dim), name_(std::move(name)), kernel_(std::move(kernel)) {
    if (dim < 1) throw_config("multiplicative function dimension must be >= 1");
  }

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  Value kernel(std::int64_t p, std::span<const std::int32_t> e) const { return kernel_(p, e); }

 private:
  int dim_;
  std::string name_;
  Kernel kernel_;
};

// builtins
MultiplicativeFunction builtin_gcd(int dim);                       // p^{min e}
MultiplicativeFunction builtin_lcm_ratio(int dim);                 // p^{max e - sum e}
MultiplicativeFunction builtin_coprime_indicator(int dim);         // 1{min e = 0}
MultiplicativeFunction builtin_gcd_power(int dim, double s);       // p^{s min e}
MultiplicativeFunction builtin_one(int dim);                       // 1
// series-check demos: F(p^{e_1},..) = exp(w(p) sum e) with w = 1 and w = 1/p
MultiplicativeFunction builtin_exp_omega(int dim);
MultiplicativeFunction builtin_exp_omega_over_p(int dim);

// by-name factory used by the CLI config; s is consumed by gcd_power
MultiplicativeFunction builtin_by_name(const std::string& name, int dim, double s = 1.0);
std::vector<std::string> builtin_names();

// F(x) as the finite product of kernel values over primes dividing a coordinate
Value evaluate(const MultiplicativeFunction& f, PointView x, const SpfTable& table);

// F_i(p) = log F(1,..,p,..,1), principal branch
struct LogKernelValue {
  std::complex<double> log{0, 0};
  bool on_branch_cut = false;  // kernel value on the negative real axis
  bool singular = false;       // kernel value 0; series using it are declared divergent
};
LogKernelValue f_i_log(const MultiplicativeFunction& f, int axis, std::int64_t p);

// Truncated Euler product for the mean value M(F): product over p <= cutoff of
// (1-1/p)^d * sum over exponent tuples of kernel/p^{sum e}.  The inner sum is
// truncated once the observed geometric decay bounds the remaining terms below
// tail_tol; failure to decay within sum(e) <= 60 raises a numeric error.
struct MeanValueResult {
  std::complex<double> value{0, 0};
  std::int64_t prime_cutoff = 0;
  double max_tail_bound = 0;  // worst per-prime inner-sum tail bound
  int max_level = 0;          // deepest exponent level used
};
MeanValueResult mean_value(const MultiplicativeFunction& f, std::int64_t prime_cutoff,
                           double tail_tol = 1e-8);

// (1/#D) sum of F over the domain (enumerated); budget guards the enumeration
std::complex<double> empirical_mean(const MultiplicativeFunction& f, const LatticeDomain& d,
                                    const SpfTable& table,
                                    std::int64_t enumeration_budget = 50'000'000,
                                    int threads = 1);

// Partial sums of the Kolmogorov-type series over p <= cutoff, with partials
// recorded at cutoff/100 and cutoff/10.  The convergence flag asks the partial
// sums to stabilize across the last two decades within stabilize_tol.
struct SeriesCheckResult {
  std::int64_t cutoff = 0;
  double threshold_a = 0;
  // three-series sums at cutoff
  double s1 = 0;                   // (1/p) sum_i 1{|F_i(p)| > A}
  std::complex<double> s2{0, 0};   // (1/p) sum_i F_i(p) 1{|F_i(p)| <= A}
  double s3 = 0;                   // (1/p) sum_i |F_i(p)|^2 1{|F_i(p)| <= A}
  // two-series sums (t1 coincides with s1)
  double t1 = 0;
  double t2 = 0;                   // (1/p) sum_i |F_i(p)| 1{|F_i(p)| <= A}
  int branch_cut_count = 0;
  int singular_count = 0;
  double stabilize_tol = 0;
  // partial sums at cutoff/100, cutoff/10, cutoff for each tracked series
  std::vector<double> s1_decades, s2_abs_decades, s3_decades, t2_decades;
  bool convergent = false;
};

SeriesCheckResult three_series_check(const MultiplicativeFunction& f, double threshold_a,
                                     std::int64_t prime_cutoff, double stabilize_tol = 0.05,
                                     int branch_cut_allowance = 0);
SeriesCheckResult two_series_check(const MultiplicativeFunction& f, double threshold_a,
                                   std::int64_t prime_cutoff, double stabilize_tol = 0.05,
                                   int branch_cut_allowance = 0);

}  // namespace mmf

#endif
