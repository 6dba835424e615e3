#include "mmf/multfunc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace mmf {

std::string Value::to_string() const {
  if (exact_) return rat_.to_string();
  std::ostringstream os;
  os.precision(17);
  if (z_.imag() == 0.0) {
    os << z_.real();
  } else {
    os << z_.real() << (z_.imag() < 0 ? "-" : "+") << std::abs(z_.imag()) << "i";
  }
  return os.str();
}

namespace {

std::int64_t checked_prime_pow(std::int64_t p, std::int64_t e) {
  __int128 v = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    v *= p;
    if (v > std::numeric_limits<std::int64_t>::max()) throw_numeric("prime power overflow");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

MultiplicativeFunction builtin_gcd(int dim) {
  return MultiplicativeFunction(dim, "gcd", [](std::int64_t p, std::span<const std::int32_t> e) {
    std::int32_t m = e[0];
    for (std::int32_t v : e) m = std::min(m, v);
    return Value::exact(Rational(checked_prime_pow(p, m)));
  });
}

MultiplicativeFunction builtin_lcm_ratio(int dim) {
  return MultiplicativeFunction(
      dim, "lcm_ratio", [](std::int64_t p, std::span<const std::int32_t> e) {
        std::int64_t mx = e[0], sum = 0;
        for (std::int32_t v : e) {
          mx = std::max<std::int64_t>(mx, v);
          sum += v;
        }
        // max - sum <= 0, so the value is 1 / p^{sum-max}
        return Value::exact(Rational(1, checked_prime_pow(p, sum - mx)));
      });
}

MultiplicativeFunction builtin_coprime_indicator(int dim) {
  return MultiplicativeFunction(
      dim, "coprime", [](std::int64_t, std::span<const std::int32_t> e) {
        std::int32_t m = e[0];
        for (std::int32_t v : e) m = std::min(m, v);
        return Value::exact(Rational(m == 0 ? 1 : 0));
      });
}

MultiplicativeFunction builtin_gcd_power(int dim, double s) {
  bool integral = (s == std::floor(s)) && std::abs(s) <= 62;
  return MultiplicativeFunction(
      dim, "gcd_power", [s, integral](std::int64_t p, std::span<const std::int32_t> e) {
        std::int32_t m = e[0];
        for (std::int32_t v : e) m = std::min(m, v);
        if (integral) {
          int k = static_cast<int>(s) * m;
          return Value::exact(Rational::prime_power(p, k));
        }
        return Value::complex(std::pow(static_cast<double>(p), s * m));
      });
}

MultiplicativeFunction builtin_one(int dim) {
  return MultiplicativeFunction(dim, "one", [](std::int64_t, std::span<const std::int32_t>) {
    return Value::exact(Rational(1));
  });
}

MultiplicativeFunction builtin_exp_omega(int dim) {
  return MultiplicativeFunction(
      dim, "exp_omega", [](std::int64_t, std::span<const std::int32_t> e) {
        std::int64_t sum = 0;
        for (std::int32_t v : e) sum += v;
        return Value::complex(std::exp(static_cast<double>(sum)));
      });
}

MultiplicativeFunction builtin_exp_omega_over_p(int dim) {
  return MultiplicativeFunction(
      dim, "exp_omega_over_p", [](std::int64_t p, std::span<const std::int32_t> e) {
        std::int64_t sum = 0;
        for (std::int32_t v : e) sum += v;
        return Value::complex(std::exp(static_cast<double>(sum) / static_cast<double>(p)));
      });
}

MultiplicativeFunction builtin_by_name(const std::string& name, int dim, double s) {
  if (name == "gcd") return builtin_gcd(dim);
  if (name == "lcm_ratio") return builtin_lcm_ratio(dim);
  if (name == "coprime") return builtin_coprime_indicator(dim);
  if (name == "gcd_power") return builtin_gcd_power(dim, s);
  if (name == "one") return builtin_one(dim);
  if (name == "exp_omega") return builtin_exp_omega(dim);
  if (name == "exp_omega_over_p") return builtin_exp_omega_over_p(dim);
  throw_config("unknown builtin function '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"gcd", "lcm_ratio", "coprime", "gcd_power", "one", "exp_omega", "exp_omega_over_p"};
}

Value evaluate(const MultiplicativeFunction& f, PointView x, const SpfTable& table) {
  if (static_cast<int>(x.size()) != f.dim()) throw_config("evaluate: point dimension mismatch");
  int dim = f.dim();
  thread_local std::vector<std::pair<std::int64_t, std::int32_t>> facs;  // (prime, packed axis/exp)
  thread_local std::vector<std::int32_t> exps;
  facs.clear();
  thread_local PrimeExponentVector scratch;
  for (int i = 0; i < dim; ++i) {
    table.factorize_into(x[i], scratch);
    for (const auto& [p, e] : scratch.entries)
      facs.emplace_back(p, static_cast<std::int32_t>(i) << 8 | e);
  }
  std::sort(facs.begin(), facs.end());
  Value result = Value::exact(Rational(1));
  exps.assign(static_cast<std::size_t>(dim), 0);
  std::size_t k = 0;
  while (k < facs.size()) {
    std::int64_t p = facs[k].first;
    std::fill(exps.begin(), exps.end(), 0);
    while (k < facs.size() && facs[k].first == p) {
      exps[facs[k].second >> 8] = facs[k].second & 0xFF;
      ++k;
    }
    result = result * f.kernel(p, exps);
  }
  return result;
}

LogKernelValue f_i_log(const MultiplicativeFunction& f, int axis, std::int64_t p) {
  if (axis < 0 || axis >= f.dim()) throw_config("f_i_log: axis out of range");
  std::vector<std::int32_t> e(static_cast<std::size_t>(f.dim()), 0);
  e[axis] = 1;
  Value v = f.kernel(p, e);
  LogKernelValue out;
  if (v.is_zero()) {
    out.singular = true;
    return out;
  }
  std::complex<double> z = v.as_complex();
  out.on_branch_cut = (z.imag() == 0.0 && z.real() < 0.0);
  out.log = std::log(z);
  return out;
}

namespace {

// enumerate all exponent tuples with sum(e) == level, invoking fn(exps)
template <typename Fn>
void for_each_composition(std::vector<std::int32_t>& e, int pos, std::int32_t remaining, Fn&& fn) {
  if (pos == static_cast<int>(e.size()) - 1) {
    e[pos] = remaining;
    fn(e);
    return;
  }
  for (std::int32_t v = remaining; v >= 0; --v) {
    e[pos] = v;
    for_each_composition(e, pos + 1, remaining - v, fn);
  }
}

}  // namespace

MeanValueResult mean_value(const MultiplicativeFunction& f, std::int64_t prime_cutoff,
                           double tail_tol) {
  if (prime_cutoff < 2) throw_config("mean_value: prime cutoff must be >= 2");
  if (!(tail_tol > 0)) throw_config("mean_value: tail tolerance must be positive");
  constexpr int kLevelCap = 60;
  auto primes = primes_up_to(prime_cutoff);
  MeanValueResult res;
  res.prime_cutoff = prime_cutoff;
  std::complex<double> product = 1.0;
  std::vector<std::int32_t> e(static_cast<std::size_t>(f.dim()));
  for (std::int64_t p : primes) {
    std::complex<double> inner = 1.0;  // level 0 term
    double prev_abs = 1.0, prev_ratio = 2.0;
    double inv_p = 1.0 / static_cast<double>(p);
    bool settled = false;
    for (int level = 1; level <= kLevelCap; ++level) {
      std::complex<double> level_sum = 0.0;
      double level_abs = 0.0;
      double weight = std::pow(inv_p, level);
      for_each_composition(e, 0, level, [&](std::span<const std::int32_t> exps) {
        std::complex<double> v = f.kernel(p, exps).as_complex();
        level_sum += v * weight;
        level_abs += std::abs(v) * weight;
      });
      inner += level_sum;
      res.max_level = std::max(res.max_level, level);
      if (level_abs == 0.0 && prev_abs == 0.0) {
        settled = true;
        break;
      }
      double ratio = prev_abs > 0 ? level_abs / prev_abs : (level_abs == 0.0 ? 0.0 : 2.0);
      double r = std::max(ratio, prev_ratio);
      if (level >= 2 && r < 1.0) {
        double tail = level_abs * r / (1.0 - r);
        if (tail < tail_tol) {
          res.max_tail_bound = std::max(res.max_tail_bound, tail);
          settled = true;
          break;
        }
      }
      prev_ratio = ratio;
      prev_abs = level_abs;
    }
    if (!settled)
      throw_numeric("mean_value: inner sum failed to decay within the exponent cap for p=" +
                    std::to_string(p) + " (summability)");
    product *= std::pow(1.0 - inv_p, f.dim()) * inner;
  }
  res.value = product;
  return res;
}

std::complex<double> empirical_mean(const MultiplicativeFunction& f, const LatticeDomain& d,
                                    const SpfTable& table, std::int64_t enumeration_budget,
                                    int threads) {
  if (f.dim() != d.dim()) throw_config("empirical_mean: dimension mismatch");
  std::int64_t count = d.cardinality();
  if (count > enumeration_budget)
    throw_resource("empirical_mean: enumeration budget exceeded; use the Monte Carlo path");
  threads = std::max(1, threads);
  Coord lo = d.box_lo()[0], hi = d.box_hi()[0];
  int blocks = std::min<std::int64_t>(threads, hi - lo + 1);
  std::vector<std::complex<long double>> partial(static_cast<std::size_t>(blocks), 0.0L);
  auto work = [&](int b) {
    Coord width = hi - lo + 1;
    Coord b_lo = lo + width * b / blocks;
    Coord b_hi = lo + width * (b + 1) / blocks - 1;
    auto cur = d.cursor(b_lo, b_hi);
    std::vector<Coord> buf(static_cast<std::size_t>(d.dim()));
    std::complex<long double> acc = 0.0L;
    while (cur->next(buf)) {
      std::complex<double> v = evaluate(f, buf, table).as_complex();
      acc += std::complex<long double>(v.real(), v.imag());
    }
    partial[static_cast<std::size_t>(b)] = acc;
  };
  if (blocks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) pool.emplace_back(work, b);
    for (auto& t : pool) t.join();
  }
  std::complex<long double> total = 0.0L;
  for (const auto& v : partial) total += v;  // deterministic block order
  total /= static_cast<long double>(count);
  return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

namespace {

SeriesCheckResult series_scan(const MultiplicativeFunction& f, double threshold_a,
                              std::int64_t cutoff, double stabilize_tol,
                              int branch_cut_allowance, bool two_series) {
  if (!(threshold_a > 0)) throw_config("series check: A must be positive");
  if (cutoff < 2) throw_config("series check: cutoff must be >= 2");
  SeriesCheckResult r;
  r.cutoff = cutoff;
  r.threshold_a = threshold_a;
  r.stabilize_tol = stabilize_tol;
  auto primes = primes_up_to(cutoff);
  const std::vector<std::int64_t> checkpoints = {cutoff / 100, cutoff / 10, cutoff};
  std::size_t next_cp = 0;
  auto record_partials = [&] {
    r.s1_decades.push_back(r.s1);
    r.s2_abs_decades.push_back(std::abs(r.s2));
    r.s3_decades.push_back(r.s3);
    r.t2_decades.push_back(r.t2);
    ++next_cp;
  };
  for (std::int64_t p : primes) {
    // sums so far cover primes < p, i.e. primes <= c for any checkpoint c < p
    while (next_cp < checkpoints.size() && checkpoints[next_cp] < p) record_partials();
    double inv_p = 1.0 / static_cast<double>(p);
    for (int i = 0; i < f.dim(); ++i) {
      LogKernelValue lv = f_i_log(f, i, p);
      if (lv.singular) {
        ++r.singular_count;
        continue;
      }
      if (lv.on_branch_cut) ++r.branch_cut_count;
      double mag = std::abs(lv.log);
      if (mag > threshold_a) {
        r.s1 += inv_p;
        r.t1 += inv_p;
      } else {
        r.s2 += lv.log * inv_p;
        r.s3 += mag * mag * inv_p;
        r.t2 += mag * inv_p;
      }
    }
  }
  while (next_cp < checkpoints.size()) record_partials();

  auto stable = [&](const std::vector<double>& v) {
    std::size_t k = v.size();
    return std::abs(v[k - 1] - v[k - 2]) < stabilize_tol &&
           std::abs(v[k - 2] - v[k - 3]) < stabilize_tol;
  };
  bool flag;
  if (two_series) {
    flag = stable(r.s1_decades) && stable(r.t2_decades);
  } else {
    flag = stable(r.s1_decades) && stable(r.s2_abs_decades) && stable(r.s3_decades);
  }
  if (r.singular_count > 0) flag = false;
  if (r.branch_cut_count > branch_cut_allowance) flag = false;
  r.convergent = flag;
  return r;
}

}  // namespace

SeriesCheckResult three_series_check(const MultiplicativeFunction& f, double threshold_a,
                                     std::int64_t prime_cutoff, double stabilize_tol,
                                     int branch_cut_allowance) {
  return series_scan(f, threshold_a, prime_cutoff, stabilize_tol, branch_cut_allowance, false);
}

SeriesCheckResult two_series_check(const MultiplicativeFunction& f, double threshold_a,
                                   std::int64_t prime_cutoff, double stabilize_tol,
                                   int branch_cut_allowance) {
  return series_scan(f, threshold_a, prime_cutoff, stabilize_tol, branch_cut_allowance, true);
}

}  // namespace mmf
