#pragma once

// Unevaluated sum of two doubles (~106 bit significand). Only the operations
// the series summations need are provided.

#include <cmath>
#include <quadmath.h>

namespace fracspec {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT: implicit by intent
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  static DoubleDouble from_quad(__float128 q) {
    const double h = static_cast<double>(q);
    if (!std::isfinite(h)) return {h, 0.0};
    return {h, static_cast<double>(q - static_cast<__float128>(h))};
  }

  double to_double() const { return hi + lo; }
  __float128 to_quad() const { return static_cast<__float128>(hi) + static_cast<__float128>(lo); }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
  DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble& operator+=(DoubleDouble& a, const DoubleDouble& b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, const DoubleDouble& b) { return a = a - b; }

inline double abs_hi(const DoubleDouble& a) { return std::fabs(a.hi); }

/// Unit roundoff of the double-double format.
inline constexpr double kDoubleDoubleEps = 4.93038065763132e-32;  // 2^-104

}  // namespace fracspec
