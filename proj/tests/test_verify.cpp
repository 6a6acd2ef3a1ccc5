#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "skewloop/construct.hpp"
#include "skewloop/verify.hpp"

using namespace skewloop;
namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpaceCurve constructed_loop() {
  const SupportFunction s(TrigPoly(1.0, {0, 0, 0.05}, {0, 0, 0}));
  return build_cylinder_loop(s, construct_height(s.v()));
}

SpaceCurve unit_circle() {
  return SpaceCurve(TrigPoly::harmonic_cos(1, 1.0),
                    TrigPoly::harmonic_sin(1, 1.0), TrigPoly(0.0));
}
}  // namespace

TEST_CASE("defect is symmetric and vanishes on the diagonal") {
  const SpaceCurve c = constructed_loop();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const double t = u(rng), s = u(rng);
    CHECK(defect(c, t, s) == doctest::Approx(defect(c, s, t)).epsilon(1e-13));
    CHECK(defect(c, t, t) == 0.0);
    CHECK(defect(c, t, s) <= 1.0 + 1e-12);
  }
}

TEST_CASE("diagonal band of the unit circle is the full pi/2 clamp") {
  // m_kappa = 1, B1 = B3 = 1 => min(1, pi/2) = 1
  CHECK(diagonal_band(unit_circle()) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("constructed loop certifies skew with a sound margin") {
  const SpaceCurve c = constructed_loop();
  const SkewCertificate cert = verify_skew(c);
  CHECK(cert.status == SkewStatus::CertifiedSkew);
  CHECK(cert.certified);
  CHECK(cert.margin > 0.0);
  CHECK(cert.band_width > 0.0);

  // soundness: margin never exceeds the defect on a fine off-band grid
  const int m = 1500;
  double grid_min = 1e300;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double t = kTwoPi * i / m, s = kTwoPi * j / m;
      const double d = std::abs(std::remainder(t - s, kTwoPi));
      if (d <= cert.band_width) continue;
      grid_min = std::min(grid_min, defect(c, t, s));
    }
  }
  CHECK(cert.margin <= grid_min + 1e-12);

  // near-diagonal soundness: no nonpositive defect inside the band
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ut(0.0, kTwoPi);
  std::uniform_real_distribution<double> ud(1e-9, cert.band_width);
  for (int i = 0; i < 100000; ++i) {
    const double t = ut(rng);
    CHECK(defect(c, t, t + ud(rng)) > 0.0);
  }
}

TEST_CASE("planar circle is refuted with an antipodal witness") {
  const SkewCertificate cert = verify_skew(unit_circle());
  CHECK(cert.status == SkewStatus::NotSkew);
  REQUIRE(cert.witness.has_value());
  CHECK(cert.witness->defect < 1e-12);
  const double gap =
      std::abs(std::remainder(cert.witness->t - cert.witness->s, kTwoPi));
  CHECK(gap == doctest::Approx(std::numbers::pi).epsilon(1e-6));
}

TEST_CASE("status is invariant under shift, reversal, and affine maps") {
  const SpaceCurve skew = constructed_loop();
  const AnalyticCurve& a = skew.analytic();

  // parameter shift: x(t + c) has the same status
  auto shifted = [&](const TrigPoly& f) {
    // shift by pi via half_shift (an exact representative shift)
    return f.half_shift();
  };
  const SpaceCurve sh(shifted(a.x), shifted(a.y), shifted(a.z));
  CHECK(verify_skew(sh).status == SkewStatus::CertifiedSkew);

  // orientation reversal t -> -t: cos fixed, sin negated
  auto reversed = [](const TrigPoly& f) {
    std::vector<double> b(f.degree());
    for (int k = 1; k <= f.degree(); ++k) b[k - 1] = -f.b(k);
    return TrigPoly(f.a0(), f.cos_coeffs(), b);
  };
  const SpaceCurve rev(reversed(a.x), reversed(a.y), reversed(a.z));
  CHECK(verify_skew(rev).status == SkewStatus::CertifiedSkew);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix3d A;
    do {
      for (int i = 0; i < 9; ++i) A(i / 3, i % 3) = u(rng);
    } while (std::abs(A.determinant()) < 0.2);
    const Vector3d b(u(rng), u(rng), u(rng));
    CHECK(verify_skew(apply_affine(skew, A, b)).status ==
          SkewStatus::CertifiedSkew);
    CHECK(verify_skew(apply_affine(unit_circle(), A, b)).status ==
          SkewStatus::NotSkew);
  }
}

TEST_CASE("tiny budgets yield Inconclusive, never a false certificate") {
  VerifyOptions opts;
  opts.box_budget = 3;
  const SkewCertificate cert = verify_skew(constructed_loop(), opts);
  CHECK(cert.status == SkewStatus::Inconclusive);
  CHECK(cert.boxes_processed <= 2 * opts.box_budget);
}

TEST_CASE("multi-worker verification agrees with single-worker") {
  VerifyOptions one, four;
  four.workers = 4;
  const SpaceCurve c = constructed_loop();
  const SkewCertificate a = verify_skew(c, one), b = verify_skew(c, four);
  CHECK(a.status == b.status);
  CHECK(std::abs(a.margin - b.margin) < 1e-15);
}

TEST_CASE("sampled curves are never certified") {
  const SpaceCurve c = constructed_loop();
  const SpaceCurve s(
      sample_curve([&](double t) { return c.jet(t); }, 2048, kTwoPi));
  const SkewCertificate cert = verify_skew(s);
  CHECK_FALSE(cert.certified);
  CHECK(cert.status != SkewStatus::Inconclusive);

  const SpaceCurve circ(sample_curve(
      [&](double t) { return unit_circle().jet(t); }, 1024, kTwoPi));
  const SkewCertificate refuted = verify_skew(circ);
  CHECK(refuted.status == SkewStatus::NotSkew);
  CHECK_FALSE(refuted.certified);
}

TEST_CASE("find_parallel_pair locates the circle's antipodal family") {
  const auto witnesses = find_parallel_pair(unit_circle());
  REQUIRE_FALSE(witnesses.empty());
  for (const auto& w : witnesses) {
    CHECK(w.defect < 1e-8);
    CHECK(std::abs(std::remainder(w.t - w.s, kTwoPi)) > 1e-6);
  }
}

TEST_CASE("perturbation stability demands a certified input") {
  CHECK_THROWS_AS(perturbation_stability(unit_circle(), 1e-6, 2),
                  Error);
}
