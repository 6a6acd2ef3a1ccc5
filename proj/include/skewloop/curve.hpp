#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "skewloop/jet.hpp"
#include "skewloop/trigpoly.hpp"

namespace skewloop {

using Eigen::Matrix3d;
using Eigen::Vector2d;
using Eigen::Vector3d;

/// Three exact trigonometric-polynomial components; period 2pi.
struct AnalyticCurve {
  TrigPoly x, y, z;
};

/// C^1 data sampled at M uniform parameters on [0, period); evaluation in
/// between is cubic Hermite. Results derived from this backend are never
/// certified.
struct SampledCurve {
  double period = 0;
  std::vector<Vector3d> positions;
  std::vector<Vector3d> velocities;
  double closure_tol = 1e-9;
};

/// Closed curve in 3-space. Immutable value type.
class SpaceCurve {
 public:
  SpaceCurve(TrigPoly x, TrigPoly y, TrigPoly z)
      : rep_(AnalyticCurve{std::move(x), std::move(y), std::move(z)}) {}
  explicit SpaceCurve(AnalyticCurve a) : rep_(std::move(a)) {}
  explicit SpaceCurve(SampledCurve s);

  bool is_analytic() const {
    return std::holds_alternative<AnalyticCurve>(rep_);
  }
  const AnalyticCurve& analytic() const {
    if (!is_analytic()) throw Unsupported("analytic backend required");
    return std::get<AnalyticCurve>(rep_);
  }
  const SampledCurve& sampled() const { return std::get<SampledCurve>(rep_); }

  double period() const;

  Vector3d position(double t) const;
  Vector3d velocity(double t) const;
  /// Sampled backend stores only C^1 data.
  Vector3d acceleration(double t) const;
  /// Unit tangent; throws ZeroVelocity on a vanishing velocity.
  Vector3d tantrix(double t) const;

  /// Order-3 germ at t. On the sampled backend the second and third
  /// derivatives come from the local Hermite cubic (approximate).
  Vec3Jet jet(double t) const;

  /// Grid minimum of the speed (analytic: certified lower bound via the
  /// coefficient machinery on |gamma'|^2; sampled: plain grid minimum).
  BoundBox speed_lower_bound(double tol = 1e-9) const;

 private:
  std::variant<AnalyticCurve, SampledCurve> rep_;
};

/// t -> A c(t) + b, same backend. Analytic coefficients map exactly.
/// Sets *singular_warning (if given) when det A == 0, in which case
/// skew-preservation is not guaranteed.
SpaceCurve apply_affine(const SpaceCurve& c, const Matrix3d& A,
                        const Vector3d& b, bool* singular_warning = nullptr);

/// Build the sampled backend from any jet source.
template <typename Fn>
SampledCurve sample_curve(const Fn& fn, int samples, double period) {
  SampledCurve s;
  s.period = period;
  s.positions.reserve(samples);
  s.velocities.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const Vec3Jet j = fn(period * i / samples);
    s.positions.emplace_back(j[0].f(), j[1].f(), j[2].f());
    s.velocities.emplace_back(j[0].d1(), j[1].d1(), j[2].d1());
  }
  return s;
}

inline Vector3d eval_curve(const SpaceCurve& c, double t) {
  return c.position(t);
}
inline Vector3d velocity(const SpaceCurve& c, double t) {
  return c.velocity(t);
}
inline Vector3d acceleration(const SpaceCurve& c, double t) {
  return c.acceleration(t);
}
inline Vector3d tantrix_at(const SpaceCurve& c, double t) {
  return c.tantrix(t);
}

}  // namespace skewloop
