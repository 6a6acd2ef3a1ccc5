#include "skewloop/construct.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace skewloop {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Mean of a smooth 2pi-periodic function by the uniform rectangle rule,
/// doubled until two successive values agree (spectral accuracy).
double periodic_mean(const std::function<double(double)>& f, int m0,
                     double tol) {
  int m = std::max(16, m0);
  double prev = 0;
  for (int i = 0; i < m; ++i) prev += f(kTwoPi * i / m);
  prev /= m;
  for (int iter = 0; iter < 16; ++iter) {
    m *= 2;
    double s = 0;
    for (int i = 0; i < m; ++i) s += f(kTwoPi * i / m);
    s /= m;
    if (std::abs(s - prev) <= tol) return s;
    prev = s;
  }
  return prev;
}

void assert_parity(const TrigPoly& e, const TrigPoly& o) {
  auto [ee, eo] = e.parity_split();
  auto [oe, oo] = o.parity_split();
  (void)ee;
  (void)oo;
  if (!eo.is_zero(1e-14 * std::max(1.0, e.max_coeff_magnitude())))
    throw Error("construct_mu: e must have even parity");
  if (!oe.is_zero(1e-14 * std::max(1.0, o.max_coeff_magnitude())))
    throw Error("construct_mu: o must have odd parity");
}
}  // namespace

MuResult construct_mu(const TrigPoly& e, const TrigPoly& o,
                      const ConstructOptions& opts) {
  assert_parity(e, o);
  if (o.is_zero(0.0) || o.max_coeff_magnitude() == 0.0)
    throw OddPartZero("construct_mu: o is identically zero (symmetric oval)");
  const BoundBox inf_eo = inf_bound_relative(e + o, opts.bound_tol);
  if (inf_eo.lower <= 0.0)
    throw Nonpositive("construct_mu: e + o not certified positive");

  const TrigPoly o2 = o * o;
  auto g = [&](double t) { return o2.eval(t) / (1.0 + e.eval(t)); };
  // tau = (1/pi) int_0^pi g = mean of g over the full circle (g is
  // pi-periodic).
  const double tau =
      periodic_mean(g, 4 * (e.degree() + o.degree()) + 2, opts.quadrature_tol);

  // mu = tau - g is pi-periodic, so only even-index harmonics appear.
  int target_degree = std::max(4, 4 * std::max(e.degree(), o.degree()));
  for (;;) {
    if (target_degree > opts.degree_cap)
      throw ProjectionFailure(
          "construct_mu: projection degree cap reached without certifying "
          "conclusion (3)");
    // Trapezoid/DFT on at least 2*degree+1 points, doubled once for slack.
    int m = 2 * target_degree + 2;
    m = std::max(m, 64);
    std::vector<double> samples(m);
    for (int i = 0; i < m; ++i) samples[i] = tau - g(kTwoPi * i / m);
    std::vector<double> a(target_degree + 1, 0.0), b(target_degree + 1, 0.0);
    for (int k = 2; k <= target_degree; k += 2) {
      double ak = 0, bk = 0;
      for (int i = 0; i < m; ++i) {
        const double t = kTwoPi * i / m;
        ak += samples[i] * std::cos(k * t);
        bk += samples[i] * std::sin(k * t);
      }
      a[k] = 2.0 * ak / m;
      b[k] = 2.0 * bk / m;
    }
    // Zero mean holds exactly by the definition of tau; pin it.
    TrigPoly mu(0.0, std::vector<double>(a.begin() + 1, a.end()),
                std::vector<double>(b.begin() + 1, b.end()));
    mu = mu.trimmed();
    const BoundBox cond3 = inf_bound_relative(e * mu + o2, opts.bound_tol);
    if (cond3.lower > 0.0)
      return {std::move(mu), tau, target_degree, cond3};
    target_degree *= 2;
  }
}

HeightFunction construct_height(const TrigPoly& v,
                                const ConstructOptions& opts) {
  const BoundBox inf_v = inf_bound_relative(v, opts.bound_tol);
  if (inf_v.lower <= 0.0)
    throw NotStrictlyConvex("construct_height: v not certified positive");
  auto [v_even, v_odd] = v.parity_split();
  if (v_odd.is_zero(0.0) || v_odd.max_coeff_magnitude() == 0.0)
    throw SymmetricBase("construct_height: v has no odd part (symmetric oval)");

  MuResult mu = construct_mu(v_even, v_odd, opts);

  HeightFunction out;
  out.z_odd = (-v_odd).antiderivative_zero_mean();
  out.z_even = mu.mu.antiderivative_zero_mean();
  out.z = out.z_even + out.z_odd;
  out.mu = mu.mu;
  out.tau = mu.tau;
  out.projection_degree = mu.projection_degree;
  out.margin = mu.condition3;  // inf (v_+ mu + v_-^2), equivalent to Eq. (15)
  return out;
}

SpaceCurve build_cylinder_loop(const SupportFunction& s,
                               const HeightFunction& z) {
  const PlanarOval oval = support_parametrization(s);
  SpaceCurve loop(oval.x, oval.y, z.z);
  // Lemma-level guarantee: a strictly convex base makes the graph loop have
  // nonvanishing curvature. Certify inf |gamma' x gamma''|^2 > 0 anyway.
  const auto& a = loop.analytic();
  const TrigPoly dx = a.x.derivative(), dy = a.y.derivative(),
                 dz = a.z.derivative();
  const TrigPoly ddx = dx.derivative(), ddy = dy.derivative(),
                 ddz = dz.derivative();
  const TrigPoly cx = dy * ddz - dz * ddy;
  const TrigPoly cy = dz * ddx - dx * ddz;
  const TrigPoly cz = dx * ddy - dy * ddx;
  const BoundBox curv =
      inf_bound_relative(cx * cx + cy * cy + cz * cz, 1e-9);
  if (curv.lower <= 0.0)
    throw FlatPoint("build_cylinder_loop: curvature lower bound not positive");
  return loop;
}

namespace {
TrigPoly margin_function(const TrigPoly& v, const TrigPoly& z) {
  auto [v_even, v_odd] = v.parity_split();
  auto [zp_even, zp_odd] = z.derivative().parity_split();
  return v_even * zp_even - v_odd * zp_odd;
}
}  // namespace

BoundBox cylinder_margin(const TrigPoly& v, const TrigPoly& z, double tol) {
  return margin_function(v, z).inf_bound(tol);
}

int cylinder_graph_skew(const TrigPoly& v, const TrigPoly& z, double tol) {
  const TrigPoly w = margin_function(v, z);
  if (w.inf_bound(tol).lower > 0.0) return +1;
  if (w.sup_bound(tol).upper < 0.0) return -1;
  return 0;
}

}  // namespace skewloop
