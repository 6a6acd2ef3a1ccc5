#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "skewloop/errors.hpp"

namespace skewloop {

/// Certified enclosure of a scalar quantity (sup or inf of a function).
struct BoundBox {
  double lower = 0;
  double upper = 0;
  bool certified = false;

  double width() const { return upper - lower; }
};

/// Real trigonometric polynomial
///   f(t) = a0 + sum_k (a_k cos kt + b_k sin kt),   t in R/2pi.
///
/// The universal scalar representation of the library: support functions,
/// oval speeds, height functions and projection targets all live here.
/// Immutable after construction; every operation returns a fresh value.
class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(double constant) : a0_(constant) {}
  TrigPoly(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static TrigPoly harmonic_cos(int k, double amp);
  static TrigPoly harmonic_sin(int k, double amp);

  int degree() const { return static_cast<int>(a_.size()); }
  double a0() const { return a0_; }
  // 1-based harmonic access; k > degree() reads as 0.
  double a(int k) const { return k >= 1 && k <= degree() ? a_[k - 1] : 0.0; }
  double b(int k) const { return k >= 1 && k <= degree() ? b_[k - 1] : 0.0; }
  const std::vector<double>& cos_coeffs() const { return a_; }
  const std::vector<double>& sin_coeffs() const { return b_; }

  /// Argument is reduced mod 2pi before summation, so
  /// eval(t) == eval(t + 2pi) bit-for-bit whenever t + 2pi is representable.
  double eval(double t) const;

  /// Value and first three derivatives in one pass.
  void eval_jets(double t, double out[4]) const;

  TrigPoly derivative() const;

  /// Antiderivative with zero constant term; requires |a0| <= tol.
  TrigPoly antiderivative_zero_mean(double tol = 1e-13) const;

  /// f(t + pi): coefficients flip sign on odd harmonics.
  TrigPoly half_shift() const;

  /// (even-index harmonics incl. a0, odd-index harmonics).
  std::pair<TrigPoly, TrigPoly> parity_split() const;

  bool is_zero(double tol = 0.0) const;
  double max_coeff_magnitude() const;

  /// Bernstein-type bound: Lip(f) <= sum_k k (|a_k| + |b_k|).
  double lipschitz_bound() const;
  /// sup|f| <= |a0| + sum_k (|a_k| + |b_k|).
  double sup_norm_bound() const;

  /// Certified enclosures of max/min over [0, 2pi]: grid extremum refined by
  /// the Lipschitz bound, grid doubled until the width drops below tol or the
  /// iteration cap fires (result stays certified, just wider).
  BoundBox sup_bound(double tol = 1e-9) const;
  BoundBox inf_bound(double tol = 1e-9) const;

  TrigPoly operator+(const TrigPoly& g) const;
  TrigPoly operator-(const TrigPoly& g) const;
  TrigPoly operator*(const TrigPoly& g) const;  // exact coefficient convolution
  TrigPoly operator*(double s) const;
  TrigPoly operator-() const { return *this * -1.0; }

  /// Drops exact-zero trailing harmonics.
  TrigPoly trimmed() const;

 private:
  double a0_ = 0;
  std::vector<double> a_;  // cos coefficients, index k-1 holds harmonic k
  std::vector<double> b_;  // sin coefficients
};

inline TrigPoly operator*(double s, const TrigPoly& f) { return f * s; }

/// Operation-style free functions mirroring the calculus surface.
inline double eval(const TrigPoly& f, double t) { return f.eval(t); }
inline TrigPoly differentiate(const TrigPoly& f) { return f.derivative(); }
inline TrigPoly antiderivative_zero_mean(const TrigPoly& f) {
  return f.antiderivative_zero_mean();
}
inline std::pair<TrigPoly, TrigPoly> parity_split(const TrigPoly& f) {
  return f.parity_split();
}
inline BoundBox sup_bound(const TrigPoly& f, double tol = 1e-9) {
  return f.sup_bound(tol);
}
inline BoundBox inf_bound(const TrigPoly& f, double tol = 1e-9) {
  return f.inf_bound(tol);
}

/// inf_bound whose pad is also allowed to be a small fraction (rel) of a
/// coarse grid minimum: certified positivity of well-separated infima at a
/// grid size independent of the requested absolute tolerance.
BoundBox inf_bound_relative(const TrigPoly& f, double tol = 1e-9,
                            double rel = 1e-4);

}  // namespace skewloop
