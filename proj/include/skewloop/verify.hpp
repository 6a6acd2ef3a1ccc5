#pragma once

#include <optional>
#include <vector>

#include "skewloop/curve.hpp"

namespace skewloop {

/// Certified bounds on derivative magnitudes of an analytic curve:
/// B_k >= sup |gamma^(k)|, m1 <= inf |gamma'|.
struct DerivativeBounds {
  double B1 = 0, B2 = 0, B3 = 0;
  double m1 = 0;
  BoundBox speed_inf;  // enclosure of inf |gamma'|
};

struct WitnessPair {
  double t = 0, s = 0;
  double defect = 0;
};

enum class SkewStatus { CertifiedSkew, NotSkew, Inconclusive };

struct SkewCertificate {
  SkewStatus status = SkewStatus::Inconclusive;
  bool certified = false;  // always false on the SampledC1 backend
  double margin = 0;       // certified lower bound of the defect off the band
  std::optional<WitnessPair> witness;
  std::vector<WitnessPair> near_witnesses;  // refuted candidates kept for diagnostics
  double band_width = 0;
  long boxes_processed = 0;
  long box_budget = 0;
  double refute_tol = 0;
  double lipschitz = 0;  // Lipschitz constant of the defect used in the search
  DerivativeBounds bounds;
};

struct VerifyOptions {
  double refute_tol = 1e-10;
  double polish_tol = 1e-12;
  long box_budget = 1'000'000;
  double bound_tol = 1e-9;
  int workers = 1;
  int sampled_grid = 2048;  // grid edge for the SampledC1 search
};

/// |tau(t) x tau(s)| in [0,1]; zero iff the tangent lines are parallel.
double defect(const SpaceCurve& c, double t, double s);

DerivativeBounds derivative_bounds(const SpaceCurve& c,
                                   double bound_tol = 1e-9);

/// Half-width delta of the excluded diagonal band: parameters with
/// 0 < circ|t - s| <= delta provably have positive defect, from
/// |gamma'(t) x gamma'(s)| >= d m_kappa - d^2 B1 B3 / 2.
double diagonal_band(const SpaceCurve& c, double bound_tol = 1e-9);

SkewCertificate verify_skew(const SpaceCurve& c, const VerifyOptions& opts = {});

/// Multistart local minimization of the defect; distinct near-zero minima,
/// deduplicated modulo (t,s) <-> (s,t).
std::vector<WitnessPair> find_parallel_pair(const SpaceCurve& c,
                                            int seeds = 64,
                                            double refute_tol = 1e-8);

/// Fraction of random C^2-norm <= eps coefficient perturbations that stay
/// CertifiedSkew. Requires an analytic curve that verifies skew.
double perturbation_stability(const SpaceCurve& c, double eps, int trials,
                              unsigned seed = 1,
                              const VerifyOptions& opts = {});

}  // namespace skewloop
