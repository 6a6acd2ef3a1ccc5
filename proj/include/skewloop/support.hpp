#pragma once

#include "skewloop/curve.hpp"
#include "skewloop/trigpoly.hpp"

namespace skewloop {

/// Support function h of a strictly convex planar oval, with the induced
/// speed v = h'' + h and a certified convexity enclosure on inf v.
/// Construction throws NotStrictlyConvex when the certificate fails.
class SupportFunction {
 public:
  explicit SupportFunction(TrigPoly h, double tol = 1e-9);

  const TrigPoly& h() const { return h_; }
  const TrigPoly& v() const { return v_; }
  const BoundBox& convexity_certificate() const { return inf_v_; }

 private:
  TrigPoly h_;
  TrigPoly v_;
  BoundBox inf_v_;
};

/// Boundary parametrized by outward normal angle:
/// gamma(t) = (h cos t - h' sin t, h sin t + h' cos t), speed = v(t).
struct PlanarOval {
  TrigPoly x, y;
  double asymmetry = 0;

  Vector2d point(double t) const { return {x.eval(t), y.eval(t)}; }
};

struct SymmetryAnalysis {
  bool symmetric = false;
  double asymmetry = 0;  // sup-norm of v_odd coefficients
  TrigPoly v_odd;
};

SupportFunction make_support_oval(const TrigPoly& h, double tol = 1e-9);

PlanarOval support_parametrization(const SupportFunction& s);

/// kappa = 1/v(t).
double curvature_from_support(const SupportFunction& s, double t);

/// Symmetric iff v is pi-periodic, i.e. v_odd vanishes.
SymmetryAnalysis symmetry_analysis(const SupportFunction& s,
                                   double tol = 1e-12);

}  // namespace skewloop
