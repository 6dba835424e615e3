#include "mmf/arith.hpp"

#include <algorithm>
#include <cmath>

namespace mmf {

std::int64_t PrimeExponentVector::reconstruct() const {
  __int128 v = 1;
  for (const auto& [p, e] : entries) {
    if (e < 0) throw_numeric("reconstruct: negative exponent, value is not an integer");
    for (int i = 0; i < e; ++i) {
      v *= p;
      if (v > std::numeric_limits<std::int64_t>::max()) throw_numeric("reconstruct: overflow");
    }
  }
  return static_cast<std::int64_t>(v);
}

Rational PrimeExponentVector::to_rational() const {
  Rational r(1);
  for (const auto& [p, e] : entries) r = r * Rational::prime_power(p, e);
  return r;
}

namespace {

template <typename Combine>
PrimeExponentVector merge_exponents(std::span<const PrimeExponentVector> vs, bool drop_missing,
                                    Combine combine) {
  if (vs.empty()) throw_config("exponent combination over empty list");
  PrimeExponentVector out;
  // walk all sorted entry lists in prime order
  std::vector<std::size_t> pos(vs.size(), 0);
  for (;;) {
    std::int64_t p = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k = 0; k < vs.size(); ++k)
      if (pos[k] < vs[k].entries.size()) p = std::min(p, vs[k].entries[pos[k]].first);
    if (p == std::numeric_limits<std::int64_t>::max()) break;
    bool in_all = true;
    bool first = true;
    std::int64_t acc = 0;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      std::int64_t e = 0;
      if (pos[k] < vs[k].entries.size() && vs[k].entries[pos[k]].first == p) {
        e = vs[k].entries[pos[k]].second;
        ++pos[k];
      } else {
        in_all = false;
      }
      acc = first ? e : combine(acc, e);
      first = false;
    }
    if (drop_missing && !in_all) continue;
    if (acc != 0) out.entries.emplace_back(p, static_cast<std::int32_t>(acc));
  }
  return out;
}

}  // namespace

PrimeExponentVector exponent_min(std::span<const PrimeExponentVector> vs) {
  return merge_exponents(vs, /*drop_missing=*/true,
                         [](std::int64_t a, std::int64_t b) { return std::min(a, b); });
}

PrimeExponentVector exponent_max(std::span<const PrimeExponentVector> vs) {
  return merge_exponents(vs, /*drop_missing=*/false,
                         [](std::int64_t a, std::int64_t b) { return std::max(a, b); });
}

PrimeExponentVector exponent_sum(std::span<const PrimeExponentVector> vs) {
  return merge_exponents(vs, /*drop_missing=*/false,
                         [](std::int64_t a, std::int64_t b) { return a + b; });
}

SpfTable::SpfTable(std::int64_t limit, std::int64_t memory_budget_bytes) : limit_(limit) {
  if (limit < 2) throw_config("SpfTable: limit must be >= 2");
  if (limit > std::int64_t(std::numeric_limits<std::uint32_t>::max()))
    throw_resource("SpfTable: limit exceeds 32-bit sieve storage");
  std::int64_t bytes = (limit + 1) * std::int64_t(sizeof(std::uint32_t));
  if (bytes > memory_budget_bytes) throw_resource("SpfTable: limit exceeds memory budget");
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  // linear sieve: every composite i*p with p <= spf(i) gets spf exactly once
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
    }
    for (std::int64_t p : primes_) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = static_cast<std::uint32_t>(p);
    }
  }
}

std::int64_t SpfTable::spf(std::int64_t n) const {
  if (n < 2 || n > limit_) throw_config("spf: argument out of table range");
  return spf_[n];
}

void SpfTable::factorize_into(std::int64_t n, PrimeExponentVector& out) const {
  out.entries.clear();
  if (n < 1 || n > limit_) throw_config("factorize: argument out of table range");
  while (n > 1) {
    std::int64_t p = spf_[n];
    std::int32_t e = 0;
    while (n % p == 0) { n /= p; ++e; }
    out.entries.emplace_back(p, e);
  }
}

PrimeExponentVector SpfTable::factorize(std::int64_t n) const {
  PrimeExponentVector v;
  factorize_into(n, v);
  return v;
}

int SpfTable::lambda_p(std::int64_t n, std::int64_t p) const {
  if (n < 1 || n > limit_) throw_config("lambda_p: argument out of table range");
  if (p < 2 || (p <= limit_ && spf_[p] != static_cast<std::uint32_t>(p)))
    throw_config("lambda_p: p is not prime");
  int e = 0;
  while (n % p == 0) { n /= p; ++e; }
  return e;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  if (limit < 2) throw_config("primes_up_to: limit must be >= 2");
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::int64_t> out;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

double zeta(double s, double rel_tol) {
  if (!(s > 1.0)) throw_numeric("zeta: requires s > 1");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw_config("zeta: rel_tol must be in (0,1)");
  // with the tail correction the residual error is ~ N^-s / 2, and zeta(s) >= 1
  double n_needed = std::pow(2.0 * rel_tol, -1.0 / s);
  if (n_needed > 2e9) throw_resource("zeta: tolerance unreachable by direct summation for this s");
  std::int64_t n = std::max<std::int64_t>(16, static_cast<std::int64_t>(n_needed) + 1);
  long double sum = 0.0L;  // small terms first
  for (std::int64_t k = n; k >= 1; --k) sum += std::pow(static_cast<long double>(k), -static_cast<long double>(s));
  long double tail = std::pow(static_cast<long double>(n), 1.0L - static_cast<long double>(s)) / (s - 1.0L);
  return static_cast<double>(sum + tail);
}

}  // namespace mmf
