#pragma once

#include <cmath>
#include <limits>

namespace rootsieve {

/// Truncated second-order Taylor number: value plus first and second
/// derivative with respect to the evaluation variable.  Arithmetic on
/// Jet2 propagates exact derivative values (up to rounding), so a
/// function built from these operations yields f, f', f'' in one pass.
struct Jet2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static Jet2 variable(double x) { return {x, 1.0, 0.0}; }
  static Jet2 constant(double c) { return {c, 0.0, 0.0}; }

  bool finite() const {
    return std::isfinite(v) && std::isfinite(d1) && std::isfinite(d2);
  }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v,
          a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double v = a.v / b.v;
  const double d1 = (a.d1 - v * b.d1) / b.v;
  const double d2 = (a.d2 - 2.0 * d1 * b.d1 - v * b.d2) / b.v;
  return {v, d1, d2};
}

inline Jet2 operator+(const Jet2& a, double c) { return {a.v + c, a.d1, a.d2}; }
inline Jet2 operator+(double c, const Jet2& a) { return a + c; }
inline Jet2 operator-(const Jet2& a, double c) { return {a.v - c, a.d1, a.d2}; }
inline Jet2 operator-(double c, const Jet2& a) { return {c - a.v, -a.d1, -a.d2}; }
inline Jet2 operator*(const Jet2& a, double c) { return {a.v * c, a.d1 * c, a.d2 * c}; }
inline Jet2 operator*(double c, const Jet2& a) { return a * c; }
inline Jet2 operator/(const Jet2& a, double c) { return {a.v / c, a.d1 / c, a.d2 / c}; }
inline Jet2 operator/(double c, const Jet2& a) { return Jet2::constant(c) / a; }

/// Chain rule for an outer scalar function with values f0 = f(u),
/// f1 = f'(u), f2 = f''(u).
inline Jet2 chain(const Jet2& u, double f0, double f1, double f2) {
  return {f0, f1 * u.d1, f2 * u.d1 * u.d1 + f1 * u.d2};
}

inline Jet2 sin(const Jet2& u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return chain(u, s, c, -s);
}
inline Jet2 cos(const Jet2& u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return chain(u, c, -s, -c);
}
inline Jet2 tan(const Jet2& u) {
  const double t = std::tan(u.v);
  const double sec2 = 1.0 + t * t;
  return chain(u, t, sec2, 2.0 * t * sec2);
}
inline Jet2 exp(const Jet2& u) {
  const double e = std::exp(u.v);
  return chain(u, e, e, e);
}
inline Jet2 log(const Jet2& u) {
  return chain(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v));
}
inline Jet2 sqrt(const Jet2& u) {
  const double s = std::sqrt(u.v);
  return chain(u, s, 0.5 / s, -0.25 / (s * s * s));
}

/// |u|; derivative undefined at u = 0, which surfaces as NaN components.
inline Jet2 abs(const Jet2& u) {
  if (u.v == 0.0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {0.0, nan, nan};
  }
  const double s = u.v > 0.0 ? 1.0 : -1.0;
  return {std::abs(u.v), s * u.d1, s * u.d2};
}

/// u^c for a constant exponent.  Integer exponents stay valid for
/// negative bases; fractional exponents of non-positive bases surface
/// NaN/inf through std::pow.
inline Jet2 pow(const Jet2& u, double c) {
  const double v = std::pow(u.v, c);
  const double f1 = c * std::pow(u.v, c - 1.0);
  const double f2 = c * (c - 1.0) * std::pow(u.v, c - 2.0);
  return chain(u, v, f1, f2);
}

inline Jet2 pow(const Jet2& u, const Jet2& w) {
  if (w.d1 == 0.0 && w.d2 == 0.0) return pow(u, w.v);
  return exp(w * log(u));
}

}  // namespace rootsieve
