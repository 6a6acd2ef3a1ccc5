#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "skewloop/support.hpp"

using namespace skewloop;
namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Random support function with certified inf(h'' + h) > floor.
TrigPoly random_convex_h(std::mt19937& rng, int degree, double floor = 0.1) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    std::vector<double> a(degree), b(degree);
    for (int k = 0; k < degree; ++k) {
      // taming factor keeps v = h'' + h from being wildly negative
      const double damp = 0.3 / ((k + 1.0) * (k + 1.0) + 1.0);
      a[k] = damp * u(rng);
      b[k] = damp * u(rng);
    }
    const TrigPoly h(1.0, a, b);
    const TrigPoly v = h.derivative().derivative() + h;
    if (v.inf_bound().lower > floor) return h;
  }
}
}  // namespace

TEST_CASE("unit circle: parametrization, curvature, symmetry") {
  const SupportFunction s(TrigPoly(1.0));
  const PlanarOval oval = support_parametrization(s);
  for (int i = 0; i < 32; ++i) {
    const double t = kTwoPi * i / 32;
    CHECK(oval.x.eval(t) == doctest::Approx(std::cos(t)).epsilon(1e-14));
    CHECK(oval.y.eval(t) == doctest::Approx(std::sin(t)).epsilon(1e-14));
    CHECK(curvature_from_support(s, t) == doctest::Approx(1.0));
  }
  const SymmetryAnalysis sym = symmetry_analysis(s);
  CHECK(sym.symmetric);
  CHECK(sym.asymmetry == 0.0);
  CHECK(oval.asymmetry == 0.0);
}

TEST_CASE("speed of the support parametrization equals v") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const SupportFunction s(random_convex_h(rng, 8));
    const PlanarOval oval = support_parametrization(s);
    const TrigPoly xp = oval.x.derivative(), yp = oval.y.derivative();
    for (int i = 0; i < 256; ++i) {
      const double t = kTwoPi * i / 256;
      const double speed = std::hypot(xp.eval(t), yp.eval(t));
      CHECK(speed == doctest::Approx(s.v().eval(t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("non-convex support function is rejected") {
  // v = 1 - 3 cos 2t dips negative
  CHECK_THROWS_AS(SupportFunction(TrigPoly(1.0, {0.0, 1.0}, {0.0, 0.0})),
                  NotStrictlyConvex);
}

TEST_CASE("translation terms move the oval and leave v untouched") {
  std::mt19937 rng(37);
  const TrigPoly h = random_convex_h(rng, 6);
  const double alpha = 0.4, beta = -0.7;
  const TrigPoly ht = h + TrigPoly::harmonic_cos(1, alpha) +
                      TrigPoly::harmonic_sin(1, beta);
  const SupportFunction s(h), st(ht);
  CHECK(st.v().a0() == doctest::Approx(s.v().a0()).epsilon(1e-14));
  for (int k = 1; k <= std::max(s.v().degree(), st.v().degree()); ++k) {
    CHECK(st.v().a(k) == doctest::Approx(s.v().a(k)).epsilon(1e-13));
    CHECK(st.v().b(k) == doctest::Approx(s.v().b(k)).epsilon(1e-13));
  }
  const PlanarOval o = support_parametrization(s),
                   ot = support_parametrization(st);
  for (int i = 0; i < 64; ++i) {
    const double t = kTwoPi * i / 64;
    CHECK((ot.point(t) - o.point(t) - Vector2d(alpha, beta)).norm() < 1e-12);
  }
}

TEST_CASE("reflection through the origin preserves the symmetry analysis") {
  std::mt19937 rng(41);
  const TrigPoly h = random_convex_h(rng, 7);
  const SupportFunction s(h), sr(h.half_shift());
  const SymmetryAnalysis a = symmetry_analysis(s), ar = symmetry_analysis(sr);
  CHECK(a.symmetric == ar.symmetric);
  CHECK(a.asymmetry == doctest::Approx(ar.asymmetry).epsilon(1e-12));
  const PlanarOval o = support_parametrization(s),
                   orf = support_parametrization(sr);
  for (int i = 0; i < 64; ++i) {
    const double t = kTwoPi * i / 64;
    CHECK((orf.point(t) + o.point(t + std::numbers::pi)).norm() < 1e-12);
  }
}

TEST_CASE("symmetric ovals satisfy the central-symmetry identity") {
  // even-harmonic support function -> centrally symmetric oval
  const TrigPoly h(1.0, {0.3, 0.15}, {0.0, -0.1});
  const TrigPoly h_even(1.0, {0.0, 0.15}, {0.0, -0.1});
  const SupportFunction s(h_even);
  CHECK(symmetry_analysis(s).symmetric);
  const PlanarOval o = support_parametrization(s);
  // center w from the (removable) index-1 terms; here zero
  for (int i = 0; i < 128; ++i) {
    const double t = kTwoPi * i / 128;
    CHECK((o.point(t + std::numbers::pi) + o.point(t)).norm() < 1e-10);
  }
}

TEST_CASE("asymmetry measures the odd part of v") {
  const TrigPoly h(1.0, {0.0, 0.0, 0.05}, {0.0, 0.0, 0.0});  // 1 + 0.05 cos 3t
  const SupportFunction s(h);
  const SymmetryAnalysis sym = symmetry_analysis(s);
  CHECK_FALSE(sym.symmetric);
  CHECK(sym.asymmetry == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(sym.v_odd.a(3) == doctest::Approx(-0.4).epsilon(1e-12));
}
