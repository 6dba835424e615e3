#ifndef MMF_RATIONAL_HPP
#define MMF_RATIONAL_HPP

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "mmf/error.hpp"

namespace mmf {

// Exact reduced fraction. Numerator and denominator are 64-bit; intermediate
// products run through 128-bit integers and results that do not reduce back
// into 64 bits raise a numeric error instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    // cross-reduce first so products stay as small as possible
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    __int128 n = static_cast<__int128>(a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1));
    __int128 d = static_cast<__int128>(a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1));
    return from_wide(n, d);
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw_numeric("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // p^e with e possibly negative
  static Rational prime_power(std::int64_t p, int e) {
    Rational r(1);
    Rational base = e >= 0 ? Rational(p) : Rational(1, p);
    int k = e >= 0 ? e : -e;
    for (int i = 0; i < k; ++i) r = r * base;
    return r;
  }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d == 0) throw_numeric("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = wide_gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
    constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();
    if (n > kMax || n < kMin || d > kMax) throw_numeric("rational overflow beyond 64 bits");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static __int128 wide_gcd(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a;
  }

  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw_numeric("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    std::int64_t g = std::gcd(n, d);
    if (g > 1) { n /= g; d /= g; }
    num_ = n;
    den_ = d;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace mmf

#endif
