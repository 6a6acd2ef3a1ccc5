#include "skewloop/support.hpp"

namespace skewloop {

SupportFunction::SupportFunction(TrigPoly h, double tol) : h_(std::move(h)) {
  v_ = h_.derivative().derivative() + h_;
  inf_v_ = v_.inf_bound(tol);
  if (inf_v_.lower <= 0.0)
    throw NotStrictlyConvex("inf v not certified positive (enclosure [" +
                            std::to_string(inf_v_.lower) + ", " +
                            std::to_string(inf_v_.upper) + "])");
}

SupportFunction make_support_oval(const TrigPoly& h, double tol) {
  return SupportFunction(h, tol);
}

PlanarOval support_parametrization(const SupportFunction& s) {
  const TrigPoly cos1 = TrigPoly::harmonic_cos(1, 1.0);
  const TrigPoly sin1 = TrigPoly::harmonic_sin(1, 1.0);
  const TrigPoly hp = s.h().derivative();
  PlanarOval oval;
  oval.x = s.h() * cos1 - hp * sin1;
  oval.y = s.h() * sin1 + hp * cos1;
  oval.asymmetry = symmetry_analysis(s).asymmetry;
  return oval;
}

double curvature_from_support(const SupportFunction& s, double t) {
  return 1.0 / s.v().eval(t);
}

SymmetryAnalysis symmetry_analysis(const SupportFunction& s, double tol) {
  auto [v_even, v_odd] = s.v().parity_split();
  (void)v_even;
  SymmetryAnalysis out;
  out.v_odd = v_odd;
  out.asymmetry = v_odd.max_coeff_magnitude();
  out.symmetric = out.asymmetry <= tol;
  return out;
}

}  // namespace skewloop
