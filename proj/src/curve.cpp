#include "skewloop/curve.hpp"

#include <cmath>
#include <numbers>

namespace skewloop {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec3Jet analytic_jet(const AnalyticCurve& a, double t) {
  double jx[4], jy[4], jz[4];
  a.x.eval_jets(t, jx);
  a.y.eval_jets(t, jy);
  a.z.eval_jets(t, jz);
  return {Jet3(jx[0], jx[1], jx[2], jx[3]), Jet3(jy[0], jy[1], jy[2], jy[3]),
          Jet3(jz[0], jz[1], jz[2], jz[3])};
}

struct HermiteSeg {
  Vector3d p0, p1, v0, v1;
  double h;  // segment length in parameter
  double u;  // local coordinate in [0,1]
};

HermiteSeg locate(const SampledCurve& s, double t) {
  const int m = static_cast<int>(s.positions.size());
  const double h = s.period / m;
  double r = std::fmod(t, s.period);
  if (r < 0) r += s.period;
  int i = static_cast<int>(r / h);
  if (i >= m) i = m - 1;
  const int j = (i + 1) % m;
  return {s.positions[i], s.positions[j], s.velocities[i], s.velocities[j], h,
          (r - i * h) / h};
}
}  // namespace

SpaceCurve::SpaceCurve(SampledCurve s) : rep_(std::move(s)) {
  const auto& sc = std::get<SampledCurve>(rep_);
  if (sc.positions.size() < 4 || sc.positions.size() != sc.velocities.size() ||
      sc.period <= 0)
    throw Error("SampledC1 curve needs period > 0 and >= 4 matched samples");
}

double SpaceCurve::period() const {
  return is_analytic() ? kTwoPi : sampled().period;
}

Vector3d SpaceCurve::position(double t) const {
  if (is_analytic()) {
    const auto& a = analytic();
    return {a.x.eval(t), a.y.eval(t), a.z.eval(t)};
  }
  const HermiteSeg g = locate(sampled(), t);
  const double u = g.u, u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * g.p0 + (u3 - 2 * u2 + u) * g.h * g.v0 +
         (-2 * u3 + 3 * u2) * g.p1 + (u3 - u2) * g.h * g.v1;
}

Vector3d SpaceCurve::velocity(double t) const {
  if (is_analytic()) {
    const auto& a = analytic();
    return {a.x.derivative().eval(t), a.y.derivative().eval(t),
            a.z.derivative().eval(t)};
  }
  const HermiteSeg g = locate(sampled(), t);
  const double u = g.u, u2 = u * u;
  return ((6 * u2 - 6 * u) * g.p0 + (3 * u2 - 4 * u + 1) * g.h * g.v0 +
          (-6 * u2 + 6 * u) * g.p1 + (3 * u2 - 2 * u) * g.h * g.v1) /
         g.h;
}

Vector3d SpaceCurve::acceleration(double t) const {
  if (!is_analytic())
    throw Unsupported("acceleration: SampledC1 backend stores only C^1 data");
  const Vec3Jet j = jet(t);
  return {j[0].d2(), j[1].d2(), j[2].d2()};
}

Vector3d SpaceCurve::tantrix(double t) const {
  const Vector3d v = velocity(t);
  const double n = v.norm();
  if (n == 0.0) throw ZeroVelocity("tantrix at a zero-velocity parameter");
  return v / n;
}

Vec3Jet SpaceCurve::jet(double t) const {
  if (is_analytic()) return analytic_jet(analytic(), t);
  const HermiteSeg g = locate(sampled(), t);
  const double u = g.u, u2 = u * u, u3 = u2 * u;
  Vec3Jet out;
  for (int k = 0; k < 3; ++k) {
    const double p0 = g.p0[k], p1 = g.p1[k];
    const double m0 = g.h * g.v0[k], m1 = g.h * g.v1[k];
    const double f = (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * m0 +
                     (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * m1;
    const double d1 = (6 * u2 - 6 * u) * p0 + (3 * u2 - 4 * u + 1) * m0 +
                      (-6 * u2 + 6 * u) * p1 + (3 * u2 - 2 * u) * m1;
    const double d2 = (12 * u - 6) * p0 + (6 * u - 4) * m0 +
                      (-12 * u + 6) * p1 + (6 * u - 2) * m1;
    const double d3 = 12 * p0 + 6 * m0 - 12 * p1 + 6 * m1;
    out[k] = Jet3(f, d1 / g.h, d2 / (g.h * g.h), d3 / (g.h * g.h * g.h));
  }
  return out;
}

BoundBox SpaceCurve::speed_lower_bound(double tol) const {
  if (is_analytic()) {
    const auto& a = analytic();
    const TrigPoly dx = a.x.derivative(), dy = a.y.derivative(),
                   dz = a.z.derivative();
    const TrigPoly speed2 = dx * dx + dy * dy + dz * dz;
    BoundBox b = inf_bound_relative(speed2, tol);
    return {b.lower > 0 ? std::sqrt(b.lower) : b.lower,
            b.upper > 0 ? std::sqrt(b.upper) : b.upper, true};
  }
  const auto& s = sampled();
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : s.velocities) m = std::min(m, v.norm());
  return {m, m, false};
}

SpaceCurve apply_affine(const SpaceCurve& c, const Matrix3d& A,
                        const Vector3d& b, bool* singular_warning) {
  if (singular_warning) *singular_warning = (A.determinant() == 0.0);
  if (c.is_analytic()) {
    const auto& a = c.analytic();
    const TrigPoly* comp[3] = {&a.x, &a.y, &a.z};
    TrigPoly out[3];
    for (int i = 0; i < 3; ++i) {
      out[i] = TrigPoly(b[i]) + *comp[0] * A(i, 0) + *comp[1] * A(i, 1) +
               *comp[2] * A(i, 2);
    }
    return SpaceCurve(out[0], out[1], out[2]);
  }
  SampledCurve s = c.sampled();
  for (auto& p : s.positions) p = A * p + b;
  for (auto& v : s.velocities) v = A * v;
  return SpaceCurve(std::move(s));
}

}  // namespace skewloop
