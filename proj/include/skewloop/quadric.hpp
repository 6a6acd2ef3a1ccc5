#pragma once

#include <functional>
#include <string>

#include "skewloop/curve.hpp"
#include "skewloop/support.hpp"

namespace skewloop {

/// Closed curve given as an order-3 jet functor; the representation for
/// surface loops whose coordinates are not trigonometric polynomials
/// (normalized projections, hyperboloid parametrizations, Q-tantrices).
struct JetCurve {
  std::function<Vec3Jet(double)> f;
  double period = 2.0 * 3.14159265358979323846;

  Vec3Jet operator()(double t) const { return f(t); }
};

/// Lorentzian form Q(x, y) = x1 y1 + x2 y2 - x3 y3.
double q_form(const Vector3d& x, const Vector3d& y);
Jet3 q_form(const Vec3Jet& x, const Vec3Jet& y);

/// X(u, v) = (cos u sinh v, sin u sinh v, cosh v) on the upper nappe Sigma.
Vec3Jet sigma_chart(const Jet3& u, const Jet3& v);
/// X~(u, v) = (cos u cosh v, sin u cosh v, sinh v) on Sigma~.
Vec3Jet sigma_tilde_chart(const Jet3& u, const Jet3& v);

/// Loop X(u(t), v(t)) on Sigma.
JetCurve sigma_loop(const TrigPoly& u_wobble, const TrigPoly& v,
                    int winding = 1);
/// Horizontal circle X~(t, v0) on Sigma~ (a non-tantrix test curve).
JetCurve sigma_tilde_circle(double v0);
/// Normalized projection g/|g| of an analytic curve: a loop on S^2.
JetCurve sphere_loop(const TrigPoly& gx, const TrigPoly& gy,
                     const TrigPoly& gz);
/// Jet view of a SpaceCurve.
JetCurve jet_curve(const SpaceCurve& c);
/// Sampled backend snapshot of a jet curve.
SpaceCurve to_sampled(const JetCurve& c, int samples = 2048);

/// Unit tangent curve tau = c'/|c'| (jets valid through order 2).
JetCurve tantrix_of(const JetCurve& c);

/// Q-normalized tangent of a loop on Sigma; lands on Sigma~.
/// Checks |Q(sigma,sigma)+1| < tol and Q(sigma',sigma') > 0 at samples.
JetCurve q_tantrix(const JetCurve& sigma, int check_samples = 256,
                   double tol = 1e-8);
/// Spec-facing variant returning the SampledC1 backend.
SpaceCurve q_tantrix_sampled(const SpaceCurve& sigma, int samples = 2048);

/// Integral of the connection form -sinh(v) du pulled back along a loop on
/// Sigma~ (identically -sin(v) du on S^2): integrand
/// -z (x y' - y x') / (x^2 + y^2). Doubling trapezoid to tolerance.
double connection_integral(const JetCurve& alpha, double tol = 1e-10);

/// |int omega| along the Q-tantrix of a loop on Sigma (necessary condition
/// for being a Q-tantrix; Lemma-level residual).
double noperiod_residual(const JetCurve& sigma, double tol = 1e-10);

struct NoPeriodReport {
  double residual = 0;
  bool annulus_valid = false;  // tantrix embedded, antipodally disjoint, graph over u
  double annulus_area = 0;     // |int d omega| over the annulus when valid
  std::string note;
};
NoPeriodReport noperiod_report(const JetCurve& sigma, double tol = 1e-10);

/// |int -sin(v) du| along the tantrix of a spherical loop.
/// Throws PoleCrossing when the tantrix approaches a pole.
double sphere_connection_residual(const JetCurve& sigma, double tol = 1e-10,
                                  double pole_tol = 1e-6);

/// |enclosed spherical area - 2pi| of the (embedded) tantrix, via
/// Gauss-Bonnet: area = 2pi - closed integral of geodesic curvature.
double bisection_defect(const JetCurve& sigma, double tol = 1e-8);

/// Arclength reparametrization; *length receives the total length.
JetCurve arclength_reparametrize(const JetCurve& c, double* length = nullptr);

/// sigma_theta(t) = sigma(t) cos theta + tau(t) sin theta on S^2.
/// Requires unit speed (throws NotUnitSpeed).
JetCurve tantrix_homotopy(const JetCurve& sigma_unit_speed, double theta);

/// mu_c(x, y, z) = (x, y, factor z).
SpaceCurve stretch(const SpaceCurve& c, double factor);

struct QuadricModel {
  enum class Kind {
    Ellipsoid,
    EllipticParaboloid,
    HyperboloidTwoSheets,
    ParaboloidApproxEllipsoid
  };
  Kind kind = Kind::Ellipsoid;
  double p1 = 1, p2 = 1, p3 = 1;  // semi-axes, or r for the approximating ellipsoid
  Matrix3d A = Matrix3d::Identity();
  Vector3d b = Vector3d::Zero();

  static QuadricModel ellipsoid(double a, double bb, double c);
  static QuadricModel sphere() { return ellipsoid(1, 1, 1); }
  static QuadricModel elliptic_paraboloid();
  static QuadricModel hyperboloid_two_sheets();
  static QuadricModel paraboloid_approx(double r);

  /// x^T M x + 2 q . x + c = 0 in world coordinates.
  void quadratic_form(Matrix3d& M, Vector3d& q, double& c) const;
};

struct Plane {
  Vector3d n;  // unit normal
  double d = 0;
};

struct PlanarSection {
  bool empty = true;
  Vector2d center = Vector2d::Zero();
  double semi_major = 0, semi_minor = 0;
  TrigPoly h;           // in-plane support function (numeric projection)
  double asymmetry = 0;  // odd-harmonic content of v = h'' + h
};

/// Transverse compact section of a positively curved quadric is an ellipse;
/// returns its in-plane support data and symmetry analysis.
/// Throws TangentPlane on a degenerate single-point intersection.
PlanarSection planar_section(const QuadricModel& q, const Plane& plane);

struct ArcSymmetry {
  double defect = 0;
  Vector2d center = Vector2d::Zero();
  double length = 0;
};

/// Best-center arclength symmetry defect of an immersed planar loop
/// (z component ignored). Zero characterizes arclength symmetry.
ArcSymmetry arclength_symmetry_defect(const JetCurve& planar_loop);

struct CylinderWitness {
  double t0 = 0;
  double t1 = 0;        // t0 + L/2
  double defect = 0;    // parallel-tangent defect of the graph loop there
};

/// Root of z'(t) + z'(t + L/2) on a cylinder over an arclength-symmetric
/// base (unit-speed, period L); the guaranteed parallel-tangent pair.
/// z_and_zprime(t) returns {z(t), z'(t)}, nL-periodic.
CylinderWitness symmetric_cylinder_witness(
    const JetCurve& base_unit_speed, double L,
    const std::function<std::array<double, 2>(double)>& z_and_zprime,
    int n = 1);

}  // namespace skewloop
