#include "skewloop/quadric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace skewloop {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

/// Doubling trapezoid (rectangle rule on a periodic integrand): spectral
/// accuracy for smooth loops.
double periodic_integral(const std::function<double(double)>& g, double period,
                         double tol, int m0 = 64) {
  int m = m0;
  double prev = 0;
  for (int i = 0; i < m; ++i) prev += g(period * i / m);
  prev *= period / m;
  for (int iter = 0; iter < 14; ++iter) {
    m *= 2;
    double s = 0;
    for (int i = 0; i < m; ++i) s += g(period * i / m);
    s *= period / m;
    if (std::abs(s - prev) <= tol) return s;
    prev = s;
  }
  return prev;
}

/// Fourier projection of periodic samples onto a TrigPoly of given degree.
TrigPoly project_trigpoly(const std::function<double(double)>& g, int degree,
                          int samples = 0) {
  const int m = std::max({samples, 4 * degree, 256});
  std::vector<double> vals(m);
  for (int i = 0; i < m; ++i) vals[i] = g(kTwoPi * i / m);
  double a0 = 0;
  for (double v : vals) a0 += v;
  a0 /= m;
  std::vector<double> a(degree), b(degree);
  for (int k = 1; k <= degree; ++k) {
    double ak = 0, bk = 0;
    for (int i = 0; i < m; ++i) {
      const double t = kTwoPi * i / m;
      ak += vals[i] * std::cos(k * t);
      bk += vals[i] * std::sin(k * t);
    }
    a[k - 1] = 2.0 * ak / m;
    b[k - 1] = 2.0 * bk / m;
  }
  return TrigPoly(a0, std::move(a), std::move(b));
}

Vector3d value_of(const Vec3Jet& j) { return {j[0].f(), j[1].f(), j[2].f()}; }
Vector3d deriv_of(const Vec3Jet& j) {
  return {j[0].d1(), j[1].d1(), j[2].d1()};
}
}  // namespace

double q_form(const Vector3d& x, const Vector3d& y) {
  return x[0] * y[0] + x[1] * y[1] - x[2] * y[2];
}

Jet3 q_form(const Vec3Jet& x, const Vec3Jet& y) {
  return x[0] * y[0] + x[1] * y[1] - x[2] * y[2];
}

Vec3Jet sigma_chart(const Jet3& u, const Jet3& v) {
  return {u.cos() * v.sinh(), u.sin() * v.sinh(), v.cosh()};
}

Vec3Jet sigma_tilde_chart(const Jet3& u, const Jet3& v) {
  return {u.cos() * v.cosh(), u.sin() * v.cosh(), v.sinh()};
}

JetCurve sigma_loop(const TrigPoly& u_wobble, const TrigPoly& v, int winding) {
  return {[=](double t) {
    double ju[4], jv[4];
    u_wobble.eval_jets(t, ju);
    v.eval_jets(t, jv);
    const Jet3 u = Jet3(winding * t, winding, 0, 0) +
                   Jet3(ju[0], ju[1], ju[2], ju[3]);
    return sigma_chart(u, Jet3(jv[0], jv[1], jv[2], jv[3]));
  }};
}

JetCurve sigma_tilde_circle(double v0) {
  return {[=](double t) {
    return sigma_tilde_chart(Jet3::variable(t), Jet3(v0));
  }};
}

JetCurve sphere_loop(const TrigPoly& gx, const TrigPoly& gy,
                     const TrigPoly& gz) {
  return {[=](double t) {
    double jx[4], jy[4], jz[4];
    gx.eval_jets(t, jx);
    gy.eval_jets(t, jy);
    gz.eval_jets(t, jz);
    const Vec3Jet g = {Jet3(jx[0], jx[1], jx[2], jx[3]),
                       Jet3(jy[0], jy[1], jy[2], jy[3]),
                       Jet3(jz[0], jz[1], jz[2], jz[3])};
    return normalized(g);
  }};
}

JetCurve jet_curve(const SpaceCurve& c) {
  return {[c](double t) { return c.jet(t); }, c.period()};
}

SpaceCurve to_sampled(const JetCurve& c, int samples) {
  return SpaceCurve(sample_curve(c.f, samples, c.period));
}

JetCurve tantrix_of(const JetCurve& c) {
  return {[f = c.f](double t) { return normalized(shift_derivative(f(t))); },
          c.period};
}

JetCurve q_tantrix(const JetCurve& sigma, int check_samples, double tol) {
  for (int i = 0; i < check_samples; ++i) {
    const Vec3Jet j = sigma(sigma.period * i / check_samples);
    const Vector3d p = value_of(j), v = deriv_of(j);
    if (std::abs(q_form(p, p) + 1.0) > tol || p[2] <= 0)
      throw NotOnSurface("q_tantrix: loop does not lie on Sigma");
    if (q_form(v, v) <= 0)
      throw NullVelocity("q_tantrix: velocity not Q-spacelike");
  }
  return {[f = sigma.f](double t) {
            const Vec3Jet d = shift_derivative(f(t));
            return d * q_form(d, d).sqrt().reciprocal();
          },
          sigma.period};
}

SpaceCurve q_tantrix_sampled(const SpaceCurve& sigma, int samples) {
  return to_sampled(q_tantrix(jet_curve(sigma)), samples);
}

double connection_integral(const JetCurve& alpha, double tol) {
  auto integrand = [&](double t) {
    const Vec3Jet j = alpha(t);
    const double x = j[0].f(), y = j[1].f(), z = j[2].f();
    const double xp = j[0].d1(), yp = j[1].d1();
    const double r2 = x * x + y * y;
    if (r2 < 1e-12)
      throw PoleCrossing("connection_integral: curve passes through a pole");
    return -z * (x * yp - y * xp) / r2;
  };
  return periodic_integral(integrand, alpha.period, tol);
}

double noperiod_residual(const JetCurve& sigma, double tol) {
  return std::abs(connection_integral(q_tantrix(sigma), tol));
}

NoPeriodReport noperiod_report(const JetCurve& sigma, double tol) {
  NoPeriodReport rep;
  const JetCurve tq = q_tantrix(sigma);
  rep.residual = std::abs(connection_integral(tq, tol));

  // Annulus area between tq and its antipodal image, when tq is a graph
  // v(u) winding once and the two graphs stay disjoint.
  const int m = 1024;
  std::vector<double> u(m), v(m);
  double prev_u = 0;
  bool graph = true;
  for (int i = 0; i < m; ++i) {
    const Vec3Jet j = tq(tq.period * i / m);
    double ui = std::atan2(j[1].f(), j[0].f());
    if (i > 0) {
      while (ui < prev_u - kPi) ui += kTwoPi;
      while (ui > prev_u + kPi) ui -= kTwoPi;
      if (ui <= prev_u) graph = false;
    }
    prev_u = ui;
    u[i] = ui;
    v[i] = std::asinh(j[2].f());
  }
  if (!graph || std::abs((u[m - 1] - u[0]) - kTwoPi * (m - 1) / m) > 0.5) {
    rep.note = "tantrix is not a single-winding graph over u; annulus hypotheses fail";
    return rep;
  }
  auto v_at = [&](double uu) {
    // linear interpolation in the monotone u table
    double x = std::remainder(uu - u[0], kTwoPi);
    if (x < 0) x += kTwoPi;
    const auto it = std::upper_bound(u.begin(), u.end(), u[0] + x);
    const int hi = std::min<int>(static_cast<int>(it - u.begin()), m - 1);
    const int lo = std::max(0, hi - 1);
    if (hi == lo) return v[lo];
    const double w = (u[0] + x - u[lo]) / (u[hi] - u[lo]);
    return (1 - w) * v[lo] + w * v[hi];
  };
  double area = 0, min_gap = std::numeric_limits<double>::infinity();
  const int g = 512;
  for (int i = 0; i < g; ++i) {
    const double uu = kTwoPi * i / g;
    const double top = v_at(uu);
    const double bot = -v_at(uu + kPi);  // antipodal image
    min_gap = std::min(min_gap, top - bot);
    area += (std::sinh(top) - std::sinh(bot)) * kTwoPi / g;
  }
  if (min_gap <= 0) {
    rep.note = "tantrix meets its antipodal image; annulus hypotheses fail";
    return rep;
  }
  rep.annulus_valid = true;
  rep.annulus_area = std::abs(area);
  rep.note = "residual ~ 0 while the annulus area form is nonvanishing";
  return rep;
}

double sphere_connection_residual(const JetCurve& sigma, double tol,
                                  double pole_tol) {
  const JetCurve tau = tantrix_of(sigma);
  for (int i = 0; i < 512; ++i) {
    const Vec3Jet j = tau(tau.period * i / 512);
    if (j[0].f() * j[0].f() + j[1].f() * j[1].f() < pole_tol)
      throw PoleCrossing("sphere_connection_residual: tantrix near a pole; rotate the loop");
  }
  return std::abs(connection_integral(tau, tol));
}

namespace {
/// Gauss-Newton on |tau(t) - tau(s)| for the embeddedness probe.
double polish_selfmeet(const JetCurve& tau, double& t, double& s) {
  auto eval = [&](double a, Vector3d& p, Vector3d& d) {
    const Vec3Jet j = tau(a);
    p = value_of(j);
    d = deriv_of(j);
  };
  Vector3d pt, dt, ps, ds;
  eval(t, pt, dt);
  eval(s, ps, ds);
  double val = (pt - ps).norm();
  for (int it = 0; it < 40 && val > 1e-15; ++it) {
    Eigen::Matrix<double, 3, 2> J;
    J.col(0) = dt;
    J.col(1) = -ds;
    const Vector3d r = pt - ps;
    const Eigen::Vector2d step =
        (J.transpose() * J + 1e-14 * Eigen::Matrix2d::Identity())
            .ldlt()
            .solve(J.transpose() * r);
    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h < 16; ++h) {
      Vector3d p1, d1, p2, d2;
      eval(t - lambda * step[0], p1, d1);
      eval(s - lambda * step[1], p2, d2);
      if ((p1 - p2).norm() < val) {
        t -= lambda * step[0];
        s -= lambda * step[1];
        pt = p1;
        dt = d1;
        ps = p2;
        ds = d2;
        val = (pt - ps).norm();
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
  }
  return val;
}
}  // namespace

double bisection_defect(const JetCurve& sigma, double tol) {
  const JetCurve tau = tantrix_of(sigma);
  const int m = 1024;
  std::vector<Vector3d> pts(m);
  double max_speed = 0;
  for (int i = 0; i < m; ++i) {
    const Vec3Jet j = tau(tau.period * i / m);
    pts[i] = value_of(j);
    max_speed = std::max(max_speed, deriv_of(j).norm());
  }
  // Embeddedness probe: any far-parameter near-meeting gets polished; an
  // actual crossing polishes to ~0.
  const int band = 8;
  const double reach = 1.5 * max_speed * band * tau.period / m;
  for (int i = 0; i < m; ++i) {
    for (int j = i + band; j < m && (m - (j - i)) >= band; ++j) {
      if ((pts[i] - pts[j]).norm() < reach) {
        double t = tau.period * i / m, s = tau.period * j / m;
        if (polish_selfmeet(tau, t, s) < 1e-9 &&
            std::abs(std::remainder((t - s) / tau.period * kTwoPi, kTwoPi)) >
                1e-6)
          throw NotEmbedded("bisection_defect: tantrix self-crossing");
      }
    }
  }
  // Gauss-Bonnet: enclosed area = 2pi - closed integral of kappa_g ds.
  auto integrand = [&](double t) {
    const Vec3Jet j = tau(t);
    const Vector3d p = value_of(j), d1 = deriv_of(j);
    const Vector3d d2(j[0].d2(), j[1].d2(), j[2].d2());
    return d2.dot(p.cross(d1)) / d1.squaredNorm();
  };
  return std::abs(periodic_integral(integrand, tau.period, tol, 256));
}

JetCurve arclength_reparametrize(const JetCurve& c, double* length) {
  auto speed = [f = c.f](double t) {
    return norm(shift_derivative(f(t))).f();
  };
  // Project the speed to spectral accuracy, integrate exactly.
  const double scale = std::max(1.0, speed(0.0));
  int degree = 16;
  TrigPoly sp;
  for (;;) {
    sp = project_trigpoly([&](double t) { return speed(t * c.period / kTwoPi); },
                          degree);
    double resid = 0;
    const int mc = 8 * degree + 17;
    for (int i = 0; i < mc; ++i) {
      const double t = kTwoPi * i / mc;
      resid = std::max(resid,
                       std::abs(sp.eval(t) - speed(t * c.period / kTwoPi)));
    }
    if (resid < 1e-12 * scale || degree >= 4096) break;
    degree *= 2;
  }
  const double mean = sp.a0();
  const double L = mean * c.period;
  if (length) *length = L;
  const TrigPoly P = (sp - TrigPoly(mean)).antiderivative_zero_mean();
  // s as a function of the native parameter t (t measured in [0, period)).
  auto s_of_t = [=, period = c.period](double t) {
    const double x = t * kTwoPi / period;
    return (mean * x + P.eval(x)) * period / kTwoPi;
  };
  auto fn = [f = c.f, s_of_t, mean, period = c.period](double s) {
    double t = s / mean;  // initial guess
    for (int it = 0; it < 60; ++it) {
      const Vec3Jet j = f(t);
      const double v = norm(shift_derivative(j)).f();
      const double err = s_of_t(t) - s;
      t -= err / v;
      if (std::abs(err) < 1e-13 * std::max(1.0, std::abs(s) + 1.0)) break;
    }
    const Vec3Jet j = f(t);
    const Jet3 vj = norm(shift_derivative(j));  // speed jets (order 2)
    const double v = vj.f(), v1 = vj.d1(), v2 = vj.d2();
    // Jets of t as a function of s, from exact speed derivatives.
    const Jet3 inner(t, 1.0 / v, -v1 / (v * v * v),
                     (3.0 * v1 * v1 - v * v2) / std::pow(v, 5));
    return compose_jet(j, inner);
  };
  return {fn, L};
}

JetCurve tantrix_homotopy(const JetCurve& sigma_unit_speed, double theta) {
  for (int i = 0; i < 256; ++i) {
    const Vec3Jet j = sigma_unit_speed(sigma_unit_speed.period * i / 256);
    if (std::abs(deriv_of(j).norm() - 1.0) > 1e-8)
      throw NotUnitSpeed("tantrix_homotopy: curve is not unit-speed");
  }
  const double ct = std::cos(theta), st = std::sin(theta);
  return {[f = sigma_unit_speed.f, ct, st](double t) {
            const Vec3Jet j = f(t);
            const Vec3Jet tau = normalized(shift_derivative(j));
            return j * ct + tau * st;
          },
          sigma_unit_speed.period};
}

SpaceCurve stretch(const SpaceCurve& c, double factor) {
  if (factor == 0.0) throw ZeroFactor("stretch: zero factor");
  Matrix3d A = Matrix3d::Identity();
  A(2, 2) = factor;
  return apply_affine(c, A, Vector3d::Zero());
}

QuadricModel QuadricModel::ellipsoid(double a, double bb, double c) {
  QuadricModel q;
  q.kind = Kind::Ellipsoid;
  q.p1 = a;
  q.p2 = bb;
  q.p3 = c;
  return q;
}
QuadricModel QuadricModel::elliptic_paraboloid() {
  QuadricModel q;
  q.kind = Kind::EllipticParaboloid;
  return q;
}
QuadricModel QuadricModel::hyperboloid_two_sheets() {
  QuadricModel q;
  q.kind = Kind::HyperboloidTwoSheets;
  return q;
}
QuadricModel QuadricModel::paraboloid_approx(double r) {
  QuadricModel q;
  q.kind = Kind::ParaboloidApproxEllipsoid;
  q.p1 = r;
  return q;
}

void QuadricModel::quadratic_form(Matrix3d& M, Vector3d& q, double& c) const {
  Matrix3d M0 = Matrix3d::Zero();
  Vector3d q0 = Vector3d::Zero();
  double c0 = 0;
  switch (kind) {
    case Kind::Ellipsoid:
      M0 = Vector3d(1.0 / (p1 * p1), 1.0 / (p2 * p2), 1.0 / (p3 * p3))
               .asDiagonal();
      c0 = -1;
      break;
    case Kind::EllipticParaboloid:  // z = x^2 + y^2
      M0 = Vector3d(1, 1, 0).asDiagonal();
      q0 = {0, 0, -0.5};
      break;
    case Kind::HyperboloidTwoSheets:  // x^2 + y^2 - z^2 = -1
      M0 = Vector3d(1, 1, -1).asDiagonal();
      c0 = 1;
      break;
    case Kind::ParaboloidApproxEllipsoid:  // x^2 + y^2 + (z/2r - r)^2 = r^2
      M0 = Vector3d(1, 1, 1.0 / (4.0 * p1 * p1)).asDiagonal();
      q0 = {0, 0, -0.5};
      c0 = 0;
      break;
  }
  const Matrix3d Ainv = A.inverse();
  M = Ainv.transpose() * M0 * Ainv;
  const Vector3d u = Ainv.transpose() * q0;
  q = u - M * b;
  c = b.dot(M * b) - 2.0 * u.dot(b) + c0;
}

PlanarSection planar_section(const QuadricModel& qm, const Plane& plane) {
  Matrix3d M;
  Vector3d q;
  double c;
  qm.quadratic_form(M, q, c);
  const Vector3d n = plane.n.normalized();
  const Vector3d e1 = n.unitOrthogonal();
  const Vector3d e2 = n.cross(e1);
  const Vector3d p0 = plane.d * n;

  Eigen::Matrix2d A2;
  A2 << e1.dot(M * e1), e1.dot(M * e2), e2.dot(M * e1), e2.dot(M * e2);
  const Eigen::Vector2d l(e1.dot(M * p0 + q), e2.dot(M * p0 + q));
  const double k = p0.dot(M * p0) + 2.0 * q.dot(p0) + c;

  PlanarSection out;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(A2);
  double lmin = es.eigenvalues()[0], lmax = es.eigenvalues()[1];
  double sign = 1.0;
  if (lmax < 0) {  // normalize so the form opens upward
    sign = -1.0;
    std::swap(lmin, lmax);
    lmin = -lmax;
  }
  const Eigen::Matrix2d A2s = sign * A2;
  const Eigen::Vector2d ls = sign * l;
  const double ks = sign * k;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> ess(A2s);
  if (ess.eigenvalues()[0] <= 1e-14) return out;  // not a compact section
  const Eigen::Vector2d center = -A2s.ldlt().solve(ls);
  const double kc = ks + ls.dot(center);
  const double scale = std::max({1.0, std::abs(ks), ls.norm()});
  if (kc >= 0) {
    if (kc < 1e-12 * scale)
      throw TangentPlane("planar_section: degenerate single-point intersection");
    return out;  // empty
  }
  out.empty = false;
  out.center = center;
  const double l1 = ess.eigenvalues()[0], l2 = ess.eigenvalues()[1];
  const Eigen::Vector2d u1 = ess.eigenvectors().col(0),
                        u2 = ess.eigenvectors().col(1);
  out.semi_major = std::sqrt(-kc / l1);
  out.semi_minor = std::sqrt(-kc / l2);
  auto support = [&](double th) {
    const Eigen::Vector2d e(std::cos(th), std::sin(th));
    const double s1 = out.semi_major * u1.dot(e);
    const double s2 = out.semi_minor * u2.dot(e);
    return center.dot(e) + std::sqrt(s1 * s1 + s2 * s2);
  };
  out.h = project_trigpoly(support, 48, 1024);
  const TrigPoly v = out.h.derivative().derivative() + out.h;
  out.asymmetry = v.parity_split().second.max_coeff_magnitude();
  return out;
}

ArcSymmetry arclength_symmetry_defect(const JetCurve& planar_loop) {
  ArcSymmetry out;
  JetCurve uc = arclength_reparametrize(planar_loop, &out.length);
  const double L = out.length;
  const int m = 2048;
  std::vector<Vector2d> p(m), q(m);
  Vector2d center = Vector2d::Zero();
  for (int i = 0; i < m; ++i) {
    const double s = L * i / m;
    const Vec3Jet a = uc(s), b = uc(s + L / 2.0);
    p[i] = {a[0].f(), a[1].f()};
    q[i] = {b[0].f(), b[1].f()};
    center += 0.5 * (p[i] + q[i]);
  }
  center /= m;
  double defect = 0;
  for (int i = 0; i < m; ++i)
    defect = std::max(defect, 0.5 * (p[i] + q[i] - 2.0 * center).norm());
  out.defect = defect;
  out.center = center;
  return out;
}

CylinderWitness symmetric_cylinder_witness(
    const JetCurve& base_unit_speed, double L,
    const std::function<std::array<double, 2>(double)>& z_and_zprime, int n) {
  // Precondition: the base really is arclength-symmetric.
  {
    const int m = 512;
    Vector2d sum0 = Vector2d::Zero();
    {
      const Vec3Jet a = base_unit_speed(0.0), b = base_unit_speed(L / 2.0);
      sum0 = {a[0].f() + b[0].f(), a[1].f() + b[1].f()};
    }
    for (int i = 1; i < m; ++i) {
      const double t = L * i / m;
      const Vec3Jet a = base_unit_speed(t), b = base_unit_speed(t + L / 2.0);
      const Vector2d s(a[0].f() + b[0].f(), a[1].f() + b[1].f());
      if ((s - sum0).norm() > 1e-6)
        throw Error("symmetric_cylinder_witness: base is not arclength-symmetric");
    }
  }
  const double T = n * L;
  auto g = [&](double t) {
    return z_and_zprime(t)[1] + z_and_zprime(t + L / 2.0)[1];
  };
  const int m = 4096;
  double t0 = std::numeric_limits<double>::quiet_NaN();
  double gmax = 0;
  for (int i = 0; i < m; ++i) gmax = std::max(gmax, std::abs(g(T * i / m)));
  if (gmax < 1e-12) {
    t0 = 0.0;  // g vanishes identically: every parameter is a root
  } else {
    double ga = g(0.0);
    for (int i = 1; i <= m; ++i) {
      const double t = T * i / m;
      const double gb = g(t);
      if (std::abs(ga) < 1e-14) {
        t0 = T * (i - 1) / m;
        break;
      }
      if (ga * gb <= 0.0) {
        double lo = T * (i - 1) / m, hi = t;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (g(lo) * g(mid) <= 0)
            hi = mid;
          else
            lo = mid;
        }
        t0 = 0.5 * (lo + hi);
        break;
      }
      ga = gb;
    }
  }
  if (std::isnan(t0))
    throw NoSignChange(
        "symmetric_cylinder_witness: no sign change found; contradicts the "
        "mean value argument");

  CylinderWitness w;
  w.t0 = t0;
  w.t1 = t0 + L / 2.0;
  const Vec3Jet a = base_unit_speed(t0), b = base_unit_speed(w.t1);
  const Vector3d u1 =
      Vector3d(a[0].d1(), a[1].d1(), z_and_zprime(t0)[1]).normalized();
  const Vector3d u2 =
      Vector3d(b[0].d1(), b[1].d1(), z_and_zprime(w.t1)[1]).normalized();
  w.defect = u1.cross(u2).norm();
  return w;
}

}  // namespace skewloop
