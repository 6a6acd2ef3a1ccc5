#pragma once

#include "skewloop/support.hpp"

namespace skewloop {

/// Height function z making gamma + z k a skew loop on the cylinder,
/// together with its construction log.
struct HeightFunction {
  TrigPoly z;
  TrigPoly z_even, z_odd;
  TrigPoly mu;
  double tau = 0;
  int projection_degree = 0;
  /// Certified enclosure of inf (v_+ mu + v_-^2) > 0.
  BoundBox margin;
};

struct MuResult {
  TrigPoly mu;
  double tau = 0;
  int projection_degree = 0;
  BoundBox condition3;  // inf (e mu + o^2), certified > 0
};

struct ConstructOptions {
  double quadrature_tol = 1e-13;
  double bound_tol = 1e-9;
  int degree_cap = 512;
};

/// Given even-parity e > -o (pointwise) and odd-parity o != 0, builds the
/// zero-mean even-parity mu = tau - o^2/(1+e) (Fourier-projected) with
/// tau = (1/pi) int_0^pi o^2/(1+e). Projection degree grows until
/// inf(e mu + o^2) certifies positive on the projected mu.
MuResult construct_mu(const TrigPoly& e, const TrigPoly& o,
                      const ConstructOptions& opts = {});

/// Full construction: z_odd' = -v_odd, z_even' = mu. Requires v certified
/// positive with nonvanishing odd part.
HeightFunction construct_height(const TrigPoly& v,
                                const ConstructOptions& opts = {});

/// gamma~(t) = gamma(t) + z(t) k on the cylinder over the oval of s.
SpaceCurve build_cylinder_loop(const SupportFunction& s,
                               const HeightFunction& z);

/// Certified enclosure of inf_t [v_+ z'_+ - v_- z'_-]; positive iff the
/// graph loop over the oval with speed v is skew (when the quantity also
/// takes positive values; see cylinder_graph_skew for the full test).
BoundBox cylinder_margin(const TrigPoly& v, const TrigPoly& z,
                         double tol = 1e-9);

/// The full 1-D skewness test for cylinder graphs: skew iff
/// w(t) = v_+ z'_+ - v_- z'_- never vanishes, i.e. 0 is strictly outside
/// the range of w. Returns +1 (skew, w > 0), -1 (skew, w < 0),
/// 0 (not skew / undecided at this tolerance).
int cylinder_graph_skew(const TrigPoly& v, const TrigPoly& z,
                        double tol = 1e-9);

}  // namespace skewloop
