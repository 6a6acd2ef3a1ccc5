#include "skewloop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>

namespace skewloop {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

double circ_dist(double t, double s) {
  return std::abs(std::remainder(t - s, kTwoPi));
}

/// Cached tangent evaluation; for analytic curves the derivative polynomials
/// are precomputed once.
class TangentField {
 public:
  explicit TangentField(const SpaceCurve& c) : c_(&c) {
    if (c.is_analytic()) {
      const auto& a = c.analytic();
      dx_ = a.x.derivative();
      dy_ = a.y.derivative();
      dz_ = a.z.derivative();
      d2x_ = dx_.derivative();
      d2y_ = dy_.derivative();
      d2z_ = dz_.derivative();
      analytic_ = true;
    }
  }

  Vector3d velocity(double t) const {
    if (analytic_) return {dx_.eval(t), dy_.eval(t), dz_.eval(t)};
    return c_->velocity(t);
  }

  Vector3d tangent(double t) const {
    const Vector3d v = velocity(t);
    const double n = v.norm();
    if (n == 0.0) throw ZeroVelocity("tangent at zero-velocity parameter");
    return v / n;
  }

  /// tau and d tau / dt.
  void tangent_jet(double t, Vector3d& tau, Vector3d& dtau) const {
    Vector3d v, a;
    if (analytic_) {
      v = {dx_.eval(t), dy_.eval(t), dz_.eval(t)};
      a = {d2x_.eval(t), d2y_.eval(t), d2z_.eval(t)};
    } else {
      const Vec3Jet j = c_->jet(t);
      v = {j[0].d1(), j[1].d1(), j[2].d1()};
      a = {j[0].d2(), j[1].d2(), j[2].d2()};
    }
    const double n = v.norm();
    if (n == 0.0) throw ZeroVelocity("tangent at zero-velocity parameter");
    tau = v / n;
    dtau = (a - tau * tau.dot(a)) / n;
  }

  double defect(double t, double s) const {
    return tangent(t).cross(tangent(s)).norm();
  }

  /// |gamma'(t) x gamma''(t)|, the curvature numerator.
  double kappa_num(double t) const {
    if (analytic_) {
      const Vector3d v(dx_.eval(t), dy_.eval(t), dz_.eval(t));
      const Vector3d a(d2x_.eval(t), d2y_.eval(t), d2z_.eval(t));
      return v.cross(a).norm();
    }
    const Vec3Jet j = c_->jet(t);
    const Vector3d v(j[0].d1(), j[1].d1(), j[2].d1());
    const Vector3d a(j[0].d2(), j[1].d2(), j[2].d2());
    return v.cross(a).norm();
  }

  /// Unnormalized |gamma'(t) x gamma'(s)| together with the defect.
  double cross_norm(double t, double s, double& defect_out) const {
    const Vector3d vt = velocity(t), vs = velocity(s);
    const double nt = vt.norm(), ns = vs.norm();
    if (nt == 0.0 || ns == 0.0)
      throw ZeroVelocity("tangent at zero-velocity parameter");
    const double cn = vt.cross(vs).norm();
    defect_out = cn / (nt * ns);
    return cn;
  }

 private:
  const SpaceCurve* c_;
  bool analytic_ = false;
  TrigPoly dx_, dy_, dz_, d2x_, d2y_, d2z_;
};

/// Damped Gauss-Newton on the residual r(t,s) = tau(t) x tau(s).
/// Returns the final defect; (t,s) updated in place.
double polish_pair(const TangentField& f, double& t, double& s,
                   int max_iter = 60) {
  Vector3d taut, dtaut, taus, dtaus;
  f.tangent_jet(t, taut, dtaut);
  f.tangent_jet(s, taus, dtaus);
  Vector3d r = taut.cross(taus);
  double val = r.norm();
  for (int it = 0; it < max_iter && val > 1e-15; ++it) {
    const Vector3d jt = dtaut.cross(taus);
    const Vector3d js = taut.cross(dtaus);
    Eigen::Matrix<double, 3, 2> J;
    J.col(0) = jt;
    J.col(1) = js;
    const Eigen::Matrix2d JtJ = J.transpose() * J;
    const Eigen::Vector2d g = J.transpose() * r;
    const Eigen::Vector2d step =
        (JtJ + 1e-14 * Eigen::Matrix2d::Identity()).ldlt().solve(g);
    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h < 20; ++h) {
      const double tn = t - lambda * step[0];
      const double sn = s - lambda * step[1];
      const double vn = f.defect(tn, sn);
      if (vn < val) {
        t = tn;
        s = sn;
        val = vn;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
    f.tangent_jet(t, taut, dtaut);
    f.tangent_jet(s, taus, dtaus);
    r = taut.cross(taus);
    val = r.norm();
  }
  return val;
}

struct BranchResult {
  bool refuted = false;
  bool budget_exhausted = false;
  WitnessPair witness;
  std::vector<WitnessPair> near_witnesses;
  double margin = std::numeric_limits<double>::infinity();
  long boxes = 0;
};

/// Near-diagonal curvature bound, shared by every strip.
struct CurvatureBound {
  double m_kappa = 0;  // inf |gamma' x gamma''|
  double c13 = 0;      // B1 * B3
  double b1sq = 1;     // B1^2 >= |gamma'(t)| |gamma'(s)|
  double c12 = 0;      // B1 * B2, gradient bound for the raw cross product

  /// Certified lower bound for the defect when circ|t-s| lies in [dlo, dhi],
  /// from |gamma'(t) x gamma'(s)| >= d m_kappa - d^2 B1 B3 / 2 (concave in d,
  /// so the minimum over the interval sits at an endpoint).
  double lower(double dlo, double dhi) const {
    return lower_with(m_kappa, dlo, dhi);
  }

  /// Same bound with a localized curvature numerator: any valid lower bound
  /// for |gamma' x gamma''| over the box's t-range may replace m_kappa.
  double lower_with(double kappa_lo, double dlo, double dhi) const {
    const double glo = dlo * kappa_lo - 0.5 * dlo * dlo * c13;
    const double ghi = dhi * kappa_lo - 0.5 * dhi * dhi * c13;
    return std::min(glo, ghi) / b1sq;
  }
};

/// Branch-and-bound over (t, d), s = t + d, domain [t0,t1] x [delta, pi].
BranchResult branch_and_bound(const TangentField& f, double t0, double t1,
                              double delta, double lip,
                              const CurvatureBound& curv, double refute_tol,
                              double polish_tol, long budget) {
  BranchResult res;
  struct Box {
    double ta, tb, da, db;
  };
  std::vector<Box> stack;
  stack.push_back({t0, t1, delta, kPi});
  int polish_attempts = 0;
  const double polish_trigger = std::max(1e-3, 100 * refute_tol);
  while (!stack.empty()) {
    if (res.boxes++ > budget) {
      res.budget_exhausted = true;
      return res;
    }
    const Box b = stack.back();
    stack.pop_back();
    const double clb = curv.lower(b.da, b.db);
    if (clb > 0) {
      res.margin = std::min(res.margin, clb);
      continue;
    }
    const double tc = 0.5 * (b.ta + b.tb), dc = 0.5 * (b.da + b.db);
    const double rt = 0.5 * (b.tb - b.ta), rd = 0.5 * (b.db - b.da);
    double fc = 0;
    const double cc = f.cross_norm(tc, tc + dc, fc);
    const double reach = 2.0 * rt + rd;
    const double var = lip * reach;
    if (fc < polish_trigger &&
        (fc < refute_tol || polish_attempts < 50)) {
      ++polish_attempts;
      double pt = tc, ps = tc + dc;
      const double pv = polish_pair(f, pt, ps);
      if (pv < polish_tol && circ_dist(pt, ps) > delta) {
        res.refuted = true;
        res.witness = {pt, ps, pv};
        return res;
      }
      if (fc < refute_tol && res.near_witnesses.size() < 16)
        res.near_witnesses.push_back({pt, ps, pv});
    }
    double lb = std::max(fc - var, (cc - curv.c12 * reach) / curv.b1sq);
    if (lb <= 0) {
      // Localized near-diagonal bound: |gamma' x gamma''| at the box center
      // minus its t-variation, fed through the Taylor estimate in d.
      const double kappa_lo = f.kappa_num(tc) - rt * curv.c13;
      if (kappa_lo > 0)
        lb = std::max(lb, curv.lower_with(kappa_lo, b.da, b.db));
    }
    // Accept a positive bound outright only once the box is band-sized;
    // larger boxes must also prove a quarter of their center value, which
    // keeps the reported margin close to the true off-band minimum.
    if (lb > 0 && (lb >= 0.25 * fc || reach <= delta)) {
      res.margin = std::min(res.margin, lb);
      continue;
    }
    // Split the direction contributing most to the variation bound.
    if (2.0 * rt >= rd) {
      stack.push_back({b.ta, tc, b.da, b.db});
      stack.push_back({tc, b.tb, b.da, b.db});
    } else {
      stack.push_back({b.ta, b.tb, b.da, dc});
      stack.push_back({b.ta, b.tb, dc, b.db});
    }
  }
  return res;
}

SkewCertificate verify_sampled(const SpaceCurve& c, const VerifyOptions& opts) {
  const auto& s = c.sampled();
  const int m = static_cast<int>(s.positions.size());
  const double period = s.period;
  TangentField f(c);

  // Non-certified diagonal band from grid derivative estimates.
  double mk = std::numeric_limits<double>::infinity();
  double b1 = 0, b3 = 0;
  for (int i = 0; i < m; ++i) {
    const Vec3Jet j = c.jet(period * (i + 0.5) / m);
    const Vector3d v(j[0].d1(), j[1].d1(), j[2].d1());
    const Vector3d a(j[0].d2(), j[1].d2(), j[2].d2());
    const Vector3d jj(j[0].d3(), j[1].d3(), j[2].d3());
    mk = std::min(mk, v.cross(a).norm());
    b1 = std::max(b1, v.norm());
    b3 = std::max(b3, jj.norm());
  }
  const int grid = std::min(opts.sampled_grid, m);
  double delta = (b1 > 0 && b3 > 0) ? mk / (b1 * b3) : 0.0;
  delta = std::clamp(delta, 2.0 * period / grid, period / 4.0);

  std::vector<Vector3d> tangents(grid);
  for (int i = 0; i < grid; ++i) tangents[i] = f.tangent(period * i / grid);
  double best = std::numeric_limits<double>::infinity();
  int bi = 0, bj = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = i + 1; j < grid; ++j) {
      const int didx = std::min(j - i, grid - (j - i));
      if (didx * period / grid <= delta) continue;
      const double v = tangents[i].cross(tangents[j]).norm();
      if (v < best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  double pt = period * bi / grid, ps = period * bj / grid;
  const double refined = polish_pair(f, pt, ps);

  SkewCertificate cert;
  cert.certified = false;
  cert.band_width = delta;
  cert.boxes_processed = static_cast<long>(grid) * grid;
  cert.box_budget = opts.box_budget;
  cert.refute_tol = opts.refute_tol;
  if (refined < opts.refute_tol && circ_dist(pt * kTwoPi / period,
                                             ps * kTwoPi / period) > 1e-9) {
    cert.status = SkewStatus::NotSkew;
    cert.witness = WitnessPair{pt, ps, refined};
    cert.margin = 0;
  } else {
    cert.status = SkewStatus::CertifiedSkew;  // grid margin only, not certified
    cert.margin = std::min(best, refined);
  }
  return cert;
}

}  // namespace

double defect(const SpaceCurve& c, double t, double s) {
  return c.tantrix(t).cross(c.tantrix(s)).norm();
}

DerivativeBounds derivative_bounds(const SpaceCurve& c, double bound_tol) {
  if (!c.is_analytic())
    throw Unsupported("derivative_bounds: analytic backend required");
  const auto& a = c.analytic();
  DerivativeBounds out;
  TrigPoly d[3] = {a.x, a.y, a.z};
  double* B[3] = {&out.B1, &out.B2, &out.B3};
  for (int k = 0; k < 3; ++k) {
    for (auto& comp : d) comp = comp.derivative();
    // certified sup of the squared norm (tighter than per-component sums);
    // tolerance relative to the magnitude, so high-degree tails stay cheap
    const TrigPoly sqn = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    const double tol =
        std::max(bound_tol, 1e-4 * (1.0 + sqn.sup_norm_bound()));
    *B[k] = std::sqrt(std::max(0.0, sqn.sup_bound(tol).upper));
  }
  out.speed_inf = c.speed_lower_bound(bound_tol);
  if (out.speed_inf.lower <= 0.0)
    throw NotImmersed("derivative_bounds: speed lower bound not positive");
  out.m1 = out.speed_inf.lower;
  return out;
}

namespace {
/// Certified inf of |gamma' x gamma''| over the loop.
double curvature_numerator_inf(const SpaceCurve& c, double bound_tol) {
  const auto& a = c.analytic();
  const TrigPoly dx = a.x.derivative(), dy = a.y.derivative(),
                 dz = a.z.derivative();
  const TrigPoly ddx = dx.derivative(), ddy = dy.derivative(),
                 ddz = dz.derivative();
  const TrigPoly cx = dy * ddz - dz * ddy;
  const TrigPoly cy = dz * ddx - dx * ddz;
  const TrigPoly cz = dx * ddy - dy * ddx;
  const TrigPoly n2 = cx * cx + cy * cy + cz * cz;
  const BoundBox curv2 = inf_bound_relative(n2, bound_tol, 1e-3);
  if (curv2.lower <= 0.0)
    throw FlatPoint("diagonal_band: curvature lower bound not positive");
  return std::sqrt(curv2.lower);
}
}  // namespace

double diagonal_band(const SpaceCurve& c, double bound_tol) {
  const DerivativeBounds b = derivative_bounds(c, bound_tol);
  const double m_kappa = curvature_numerator_inf(c, bound_tol);
  // |gamma'(t) x gamma'(s)| >= d m_kappa - d^2 B1 B3 / 2, positive for
  // d < 2 m_kappa / (B1 B3); take half of that.
  return std::min(m_kappa / (b.B1 * b.B3), kPi / 2.0);
}

SkewCertificate verify_skew(const SpaceCurve& c, const VerifyOptions& opts) {
  if (!c.is_analytic()) return verify_sampled(c, opts);

  const DerivativeBounds bounds = derivative_bounds(c, opts.bound_tol);
  const double m_kappa = curvature_numerator_inf(c, opts.bound_tol);
  const double delta =
      std::min(m_kappa / (bounds.B1 * bounds.B3), kPi / 2.0);
  const double lip = bounds.B2 / bounds.m1;  // bound on |tau'|
  CurvatureBound curv;
  curv.m_kappa = m_kappa;
  curv.c13 = bounds.B1 * bounds.B3;
  curv.b1sq = bounds.B1 * bounds.B1;
  curv.c12 = bounds.B1 * bounds.B2;
  TangentField f(c);

  SkewCertificate cert;
  cert.certified = true;
  cert.band_width = delta;
  cert.box_budget = opts.box_budget;
  cert.refute_tol = opts.refute_tol;
  cert.lipschitz = lip;
  cert.bounds = bounds;

  const int strips = std::max(1, opts.workers) * (opts.workers > 1 ? 4 : 1);
  std::vector<BranchResult> results(strips);
  if (opts.workers <= 1) {
    for (int i = 0; i < strips; ++i)
      results[i] =
          branch_and_bound(f, kTwoPi * i / strips, kTwoPi * (i + 1) / strips,
                           delta, lip, curv, opts.refute_tol, opts.polish_tol,
                           opts.box_budget / strips);
  } else {
    std::vector<std::future<BranchResult>> futs;
    futs.reserve(strips);
    for (int i = 0; i < strips; ++i) {
      futs.push_back(std::async(std::launch::async, [&, i] {
        return branch_and_bound(f, kTwoPi * i / strips,
                                kTwoPi * (i + 1) / strips, delta, lip, curv,
                                opts.refute_tol, opts.polish_tol,
                                opts.box_budget / strips);
      }));
    }
    for (int i = 0; i < strips; ++i) results[i] = futs[i].get();
  }

  double margin = std::numeric_limits<double>::infinity();
  bool exhausted = false;
  for (const auto& r : results) {
    cert.boxes_processed += r.boxes;
    for (const auto& w : r.near_witnesses)
      if (cert.near_witnesses.size() < 16) cert.near_witnesses.push_back(w);
    if (r.refuted) {
      cert.status = SkewStatus::NotSkew;
      cert.witness = r.witness;
      cert.margin = 0;
      return cert;
    }
    exhausted = exhausted || r.budget_exhausted;
    margin = std::min(margin, r.margin);
  }
  if (exhausted) {
    cert.status = SkewStatus::Inconclusive;
    cert.margin = 0;
    return cert;
  }
  cert.status = SkewStatus::CertifiedSkew;
  cert.margin = margin;
  return cert;
}

std::vector<WitnessPair> find_parallel_pair(const SpaceCurve& c, int seeds,
                                            double refute_tol) {
  TangentField f(c);
  const double period = c.period();
  const int g = std::max(48, seeds);
  std::vector<Vector3d> tangents(g);
  for (int i = 0; i < g; ++i) tangents[i] = f.tangent(period * i / g);

  // Local minima of the defect on the grid, diagonal cells excluded.
  struct Cand {
    double t, s, v;
  };
  std::vector<Cand> cands;
  auto value = [&](int i, int j) {
    return tangents[(i % g + g) % g].cross(tangents[(j % g + g) % g]).norm();
  };
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const int didx = std::min((j - i + g) % g, (i - j + g) % g);
      if (didx < 2) continue;
      const double v = value(i, j);
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1 && is_min; ++dj)
          if (di || dj) is_min = value(i + di, j + dj) >= v;
      if (is_min) cands.push_back({period * i / g, period * j / g, v});
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.v < b.v; });
  if (cands.size() > 64) cands.resize(64);

  std::vector<WitnessPair> out;
  const double tp = period / kTwoPi;  // scale for circular comparisons
  for (const auto& cand : cands) {
    double t = cand.t, s = cand.s;
    const double v = polish_pair(f, t, s);
    if (v >= refute_tol) continue;
    if (circ_dist(t / tp, s / tp) < 1e-7) continue;
    if (t > s) std::swap(t, s);  // canonical order modulo symmetry
    bool dup = false;
    for (const auto& w : out) {
      if ((circ_dist(w.t / tp, t / tp) < 1e-5 &&
           circ_dist(w.s / tp, s / tp) < 1e-5) ||
          (circ_dist(w.t / tp, s / tp) < 1e-5 &&
           circ_dist(w.s / tp, t / tp) < 1e-5))
        dup = true;
    }
    if (!dup) out.push_back({t, s, v});
  }
  return out;
}

double perturbation_stability(const SpaceCurve& c, double eps, int trials,
                              unsigned seed, const VerifyOptions& opts) {
  if (!c.is_analytic())
    throw Unsupported("perturbation_stability: analytic backend required");
  const SkewCertificate base = verify_skew(c, opts);
  if (base.status != SkewStatus::CertifiedSkew)
    throw Error("perturbation_stability: input curve is not certified skew");

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.0, 1.0);
  const auto& a = c.analytic();
  const int kmax = std::max({1, a.x.degree(), a.y.degree(), a.z.degree()});

  int survived = 0;
  for (int trial = 0; trial < trials; ++trial) {
    // Random coefficient perturbation with C^2 norm bound
    // sum (1 + k + k^2)(|da| + |db|) <= eps.
    TrigPoly comp[3] = {a.x, a.y, a.z};
    std::vector<std::vector<double>> da(3), db(3);
    double weight = 0;
    for (int ci = 0; ci < 3; ++ci) {
      da[ci].resize(kmax + 1);
      db[ci].resize(kmax + 1);
      for (int k = 0; k <= kmax; ++k) {
        da[ci][k] = unif(rng);
        db[ci][k] = k == 0 ? 0.0 : unif(rng);
        weight +=
            (1.0 + k + k * k) * (std::abs(da[ci][k]) + std::abs(db[ci][k]));
      }
    }
    const double scale = weight > 0 ? eps * mag(rng) / weight : 0.0;
    for (int ci = 0; ci < 3; ++ci) {
      TrigPoly d(da[ci][0],
                 std::vector<double>(da[ci].begin() + 1, da[ci].end()),
                 std::vector<double>(db[ci].begin() + 1, db[ci].end()));
      comp[ci] = comp[ci] + d * scale;
    }
    SpaceCurve pc(comp[0], comp[1], comp[2]);
    if (verify_skew(pc, opts).status == SkewStatus::CertifiedSkew) ++survived;
  }
  return static_cast<double>(survived) / std::max(1, trials);
}

}  // namespace skewloop
