// Copyright 2026 The correq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CORREQ_RATIONAL_HPP_
#define CORREQ_RATIONAL_HPP_

#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "correq/errors.hpp"

namespace correq {

// Exact rational number on 64-bit numerator/denominator, normalized so that
// den > 0 and gcd(|num|, den) == 1. Intermediate products run through
// __int128; results that do not fit back into 64 bits throw overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long n) : num_(n), den_(1) {}  // NOLINT(runtime/explicit)
  Rational(long long n, long long d) {
    if (d == 0) throw InputError("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "n" or "n/d" with optional leading '-'.
  static std::optional<Rational> parse(std::string_view text) {
    long long n = 0;
    long long d = 1;
    auto slash = text.find('/');
    std::string_view num_part = text.substr(0, slash);
    auto res = std::from_chars(num_part.data(), num_part.data() + num_part.size(), n);
    if (res.ec != std::errc() || res.ptr != num_part.data() + num_part.size()) {
      return std::nullopt;
    }
    if (slash != std::string_view::npos) {
      std::string_view den_part = text.substr(slash + 1);
      auto res2 = std::from_chars(den_part.data(), den_part.data() + den_part.size(), d);
      if (res2.ec != std::errc() || res2.ptr != den_part.data() + den_part.size() || d == 0) {
        return std::nullopt;
      }
    }
    return Rational(n, d);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    long long g = std::gcd(a.den_, b.den_);
    __int128 n = static_cast<__int128>(a.num_) * (b.den_ / g) +
                 static_cast<__int128>(b.num_) * (a.den_ / g);
    __int128 d = static_cast<__int128>(a.den_) * (b.den_ / g);
    return make_checked(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    long long g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
    long long g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
    __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return make_checked(n, d);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InputError("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static Rational make_checked(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(-n)
                                 : static_cast<unsigned __int128>(n);
    unsigned __int128 ud = static_cast<unsigned __int128>(d);
    unsigned __int128 g = gcd128(un, ud);
    if (g > 1) {
      n /= static_cast<__int128>(g);
      d /= static_cast<__int128>(g);
    }
    constexpr __int128 kMax = static_cast<__int128>(INT64_MAX);
    constexpr __int128 kMin = -kMax - 1;
    if (n > kMax || n < kMin || d > kMax) {
      throw std::overflow_error("rational arithmetic overflow");
    }
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

// Numeric policy shared by every templated operation. Rational mode is exact
// (all tolerances zero); double mode uses the documented epsilons.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long long n) { return static_cast<double>(n); }
  static double from_ratio(long long n, long long d) {
    return static_cast<double>(n) / static_cast<double>(d);
  }
  static double eq_eps() { return 1e-9; }
  static double sum_eps() { return 1e-9; }
  // Numeric proxy for the open constraint p(a) > 0.
  static bool strictly_positive(double x) { return x >= 1e-12; }
  static double to_double(double x) { return x; }
  static double abs(double x) { return x < 0 ? -x : x; }
  static std::string render(double x) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
  }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long long n) { return Rational(n); }
  static Rational from_ratio(long long n, long long d) { return Rational(n, d); }
  static Rational eq_eps() { return Rational(0); }
  static Rational sum_eps() { return Rational(0); }
  static bool strictly_positive(const Rational& x) { return x > Rational(0); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static Rational abs(const Rational& x) { return correq::abs(x); }
  static std::string render(const Rational& x) { return x.str(); }
};

// Weak inequality "value >= 0" at the mode's equality tolerance.
template <class S>
bool weakly_nonnegative(const S& value) {
  return value >= -scalar_traits<S>::eq_eps();
}

}  // namespace correq

#endif  // CORREQ_RATIONAL_HPP_
