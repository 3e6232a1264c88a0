#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tbhfk {

// Exact rational with 64-bit numerator and denominator. Intermediate
// products are formed in 128 bits and reduced before narrowing.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design of integer literals
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  // Largest integer not exceeding the value.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  Rational operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "n" for integers, "n/d" otherwise.
  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  static Rational parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }

 private:
  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(n, d);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// Nonnegative residue of a modulo m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// First-order infinitesimal extension: value = a + b*eps with eps > 0
// smaller than every positive rational. Ordering is lexicographic.
struct EpsRational {
  Rational a;
  Rational b;

  EpsRational() = default;
  EpsRational(Rational real, Rational eps = Rational(0)) : a(real), b(eps) {}  // NOLINT

  static EpsRational eps() { return {Rational(0), Rational(1)}; }

  int sign() const { return a.sign() != 0 ? a.sign() : b.sign(); }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }

  EpsRational operator-() const { return {-a, -b}; }
  friend EpsRational operator+(const EpsRational& x, const EpsRational& y) { return {x.a + y.a, x.b + y.b}; }
  friend EpsRational operator-(const EpsRational& x, const EpsRational& y) { return {x.a - y.a, x.b - y.b}; }
  friend EpsRational operator*(const Rational& s, const EpsRational& x) { return {s * x.a, s * x.b}; }

  friend bool operator==(const EpsRational&, const EpsRational&) = default;
  friend std::strong_ordering operator<=>(const EpsRational& x, const EpsRational& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }

  std::string str() const { return b.is_zero() ? a.str() : a.str() + (b.sign() < 0 ? "" : "+") + b.str() + "e"; }
};

// Point in the plane with infinitesimal coordinates.
struct EpsPoint {
  EpsRational x;
  EpsRational y;
  friend bool operator==(const EpsPoint&, const EpsPoint&) = default;
};

inline EpsPoint operator+(const EpsPoint& p, const EpsPoint& v) { return {p.x + v.x, p.y + v.y}; }
inline EpsPoint operator-(const EpsPoint& p, const EpsPoint& v) { return {p.x - v.x, p.y - v.y}; }

// Cross product where at least one operand is exact (no eps part), so the
// result stays first-order.
inline EpsRational cross_linear(const EpsPoint& u, const EpsPoint& v) {
  if (u.x.b.is_zero() && u.y.b.is_zero()) return u.x.a * v.y - u.y.a * v.x;
  if (v.x.b.is_zero() && v.y.b.is_zero()) return -(v.x.a * u.y - v.y.a * u.x);
  throw std::logic_error("cross product of two infinitesimal vectors is second order");
}

}  // namespace tbhfk
