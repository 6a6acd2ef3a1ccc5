#pragma once

#include <array>
#include <cmath>

#include "skewloop/errors.hpp"

namespace skewloop {

/// Value plus first three derivatives, stored as truncated Taylor
/// coefficients (f, f', f''/2, f'''/6). Lets composed curve formulas
/// (normalized projections, Q-tantrices, arclength inverses) carry exact
/// derivatives without symbolic work.
class Jet3 {
 public:
  Jet3() = default;
  explicit Jet3(double value) : c_{value, 0, 0, 0} {}
  Jet3(double value, double d1, double d2, double d3)
      : c_{value, d1, d2 / 2.0, d3 / 6.0} {}
  static Jet3 variable(double t) { return Jet3(t, 1, 0, 0); }
  static Jet3 from_taylor(const std::array<double, 4>& c) {
    Jet3 j;
    j.c_ = c;
    return j;
  }

  double f() const { return c_[0]; }
  double d1() const { return c_[1]; }
  double d2() const { return 2.0 * c_[2]; }
  double d3() const { return 6.0 * c_[3]; }
  const std::array<double, 4>& taylor() const { return c_; }

  Jet3 operator+(const Jet3& g) const {
    return from_taylor({c_[0] + g.c_[0], c_[1] + g.c_[1], c_[2] + g.c_[2],
                        c_[3] + g.c_[3]});
  }
  Jet3 operator-(const Jet3& g) const {
    return from_taylor({c_[0] - g.c_[0], c_[1] - g.c_[1], c_[2] - g.c_[2],
                        c_[3] - g.c_[3]});
  }
  Jet3 operator-() const { return from_taylor({-c_[0], -c_[1], -c_[2], -c_[3]}); }
  Jet3 operator*(const Jet3& g) const {
    return from_taylor(
        {c_[0] * g.c_[0],
         c_[0] * g.c_[1] + c_[1] * g.c_[0],
         c_[0] * g.c_[2] + c_[1] * g.c_[1] + c_[2] * g.c_[0],
         c_[0] * g.c_[3] + c_[1] * g.c_[2] + c_[2] * g.c_[1] + c_[3] * g.c_[0]});
  }
  Jet3 operator*(double s) const {
    return from_taylor({c_[0] * s, c_[1] * s, c_[2] * s, c_[3] * s});
  }
  Jet3 operator+(double s) const {
    return from_taylor({c_[0] + s, c_[1], c_[2], c_[3]});
  }
  Jet3 operator-(double s) const { return *this + (-s); }

  Jet3 reciprocal() const {
    const double u = c_[0];
    if (u == 0.0) throw Error("Jet3: division by zero value");
    // Taylor series of 1/x at u composed with (x - u).
    const double iu = 1.0 / u;
    return compose({iu, -iu * iu, iu * iu * iu, -iu * iu * iu * iu});
  }
  Jet3 operator/(const Jet3& g) const { return *this * g.reciprocal(); }
  Jet3 operator/(double s) const { return *this * (1.0 / s); }

  Jet3 sqrt() const {
    const double u = c_[0];
    if (u <= 0.0) throw Error("Jet3: sqrt of nonpositive value");
    const double r = std::sqrt(u);
    return compose({r, 0.5 / r, -0.125 / (u * r), 0.0625 / (u * u * r)});
  }
  Jet3 sin() const {
    const double s = std::sin(c_[0]), c = std::cos(c_[0]);
    return compose({s, c, -s / 2.0, -c / 6.0});
  }
  Jet3 cos() const {
    const double s = std::sin(c_[0]), c = std::cos(c_[0]);
    return compose({c, -s, -c / 2.0, s / 6.0});
  }
  Jet3 sinh() const {
    const double s = std::sinh(c_[0]), c = std::cosh(c_[0]);
    return compose({s, c, s / 2.0, c / 6.0});
  }
  Jet3 cosh() const {
    const double s = std::sinh(c_[0]), c = std::cosh(c_[0]);
    return compose({c, s, c / 2.0, s / 6.0});
  }
  Jet3 asinh() const {
    const double u = c_[0];
    const double q = 1.0 + u * u;
    const double r = std::sqrt(q);
    // d/du asinh = 1/sqrt(1+u^2); higher orders by direct differentiation.
    const double d1 = 1.0 / r;
    const double d2 = -u / (q * r);
    const double d3 = (2.0 * u * u - 1.0) / (q * q * r);
    return compose({std::asinh(u), d1, d2 / 2.0, d3 / 6.0});
  }

 private:
  /// Compose Taylor coefficients F of the outer function at this jet's value
  /// with the zero-constant part of this jet.
  Jet3 compose(const std::array<double, 4>& F) const {
    const Jet3 w = from_taylor({0.0, c_[1], c_[2], c_[3]});
    Jet3 r(F[0]);
    Jet3 p(1.0);
    for (int i = 1; i < 4; ++i) {
      p = p * w;
      r = r + p * F[i];
    }
    return r;
  }

  std::array<double, 4> c_{0, 0, 0, 0};
};

inline Jet3 operator*(double s, const Jet3& j) { return j * s; }
inline Jet3 operator+(double s, const Jet3& j) { return j + s; }
inline Jet3 operator-(double s, const Jet3& j) { return (-j) + s; }

/// 3-vector of jets: a space-curve germ of order 3.
using Vec3Jet = std::array<Jet3, 3>;

inline Vec3Jet operator+(const Vec3Jet& a, const Vec3Jet& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3Jet operator-(const Vec3Jet& a, const Vec3Jet& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3Jet operator*(const Vec3Jet& a, const Jet3& s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}
inline Vec3Jet operator*(const Vec3Jet& a, double s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}
inline Jet3 dot(const Vec3Jet& a, const Vec3Jet& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3Jet cross(const Vec3Jet& a, const Vec3Jet& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline Jet3 norm(const Vec3Jet& a) { return dot(a, a).sqrt(); }
inline Vec3Jet normalized(const Vec3Jet& a) {
  return a * norm(a).reciprocal();
}

/// Compose an outer germ (derivatives of f at inner.f()) with an inner
/// reparametrization jet: returns jets of f(inner(s)) w.r.t. s.
inline Jet3 compose_jet(const Jet3& outer, const Jet3& inner) {
  const auto& in = inner.taylor();
  const Jet3 w = Jet3::from_taylor({0.0, in[1], in[2], in[3]});
  const std::array<double, 4> F = {outer.f(), outer.d1(), outer.d2() / 2.0,
                                   outer.d3() / 6.0};
  Jet3 r(F[0]);
  Jet3 p(1.0);
  for (int i = 1; i < 4; ++i) {
    p = p * w;
    r = r + p * F[i];
  }
  return r;
}
inline Vec3Jet compose_jet(const std::array<Jet3, 3>& outer,
                           const Jet3& inner) {
  return {compose_jet(outer[0], inner), compose_jet(outer[1], inner),
          compose_jet(outer[2], inner)};
}

/// Derivative of a jet curve: shifts the germ down one order (the top
/// Taylor coefficient of the result is unknown and set to zero; valid
/// through order 2).
inline Jet3 shift_derivative(const Jet3& j) {
  return Jet3(j.d1(), j.d2(), j.d3(), 0.0);
}
inline Vec3Jet shift_derivative(const Vec3Jet& a) {
  return {shift_derivative(a[0]), shift_derivative(a[1]),
          shift_derivative(a[2])};
}

}  // namespace skewloop
