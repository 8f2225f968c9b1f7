#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "oracle.hpp"
#include "slantgeom/error.hpp"
#include "slantgeom/fixtures.hpp"
#include "slantgeom/frames.hpp"

using namespace slantgeom;

namespace {

const Expr t = Expr::variable("t");

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;  // "nothing thrown"
}

double dist(const Vec3& a, const Vec3& b) { return (a - b).cwiseAbs().maxCoeff(); }

oracle::M example1_metric(const oracle::V& p) {
  oracle::M g;
  g << -2 * p.z(), 0, 0, 0, 4 * p.x() * p.x() + 2 * p.z(), 2 * p.x(), 0, 2 * p.x(), 1;
  return g;
}

oracle::M example2_metric(const oracle::V& p) { return oracle::V(-2 * p.z(), 2 * p.z(), 1).asDiagonal(); }

// Spacelike curve in example 2 whose α = -1/(2z) varies along it.
// Reference values from an independent computer-algebra run.
Curve varying_alpha_curve() {
  const Expr u = 1.0 + t / 2.0;
  const Expr v = std::sqrt(6.0) * sqrt(u) / 3.0;
  const Expr Y = std::sqrt(2.0) * sqrt(u) * sqrt(2.0 * u + 3.0) / 4.0 + 0.75 * log(v + sqrt(v * v + 1.0));
  return Curve(fixtures::example2(), {t / 2.0, 2.0 * Y, u}, {-1.0, 2.0}, "t", "varying-alpha");
}

oracle::V varying_alpha_point(double s) {
  const double u = 1 + s / 2, v = std::sqrt(6.0 * u) / 3;
  return {s / 2, 2 * (std::sqrt(2.0 * u * (2 * u + 3)) / 4 + 0.75 * std::asinh(v)), u};
}

// Straight lines in example 1, spacelike (along y) or timelike (along x).
Curve random_line(oracle::Gen& gen, bool along_x) {
  const double z0 = gen.uniform(0.3, 2.0), x0 = gen.uniform(-1, 1), y0 = gen.uniform(-1, 1);
  const double sign = gen.coin() ? 1.0 : -1.0;
  if (along_x) return generate_slant(fixtures::example1(), x0 + sign / std::sqrt(2 * z0) * t, Expr(y0), 0.0, z0);
  const double n = sign / std::sqrt(2 * z0 + 4 * x0 * x0);
  return generate_slant(fixtures::example1(), Expr(x0), y0 + n * t, 2 * n * x0, z0);
}

}  // namespace

TEST(Frenet, CurveAKappaAgainstFiniteDifferences) {
  const Curve curve = fixtures::curve_a();
  const auto kin = kinematics(curve, {-1.5, -1.0});
  const FrenetOracle direct(curve, kin);
  const oracle::CurveFn gamma = [](double s) { return oracle::V(0, -2 * std::sqrt(-s), s); };
  for (double s : {-1.5, -1.0, -0.7}) {
    const FrenetApparatus fa = direct.at(s);
    EXPECT_EQ(fa.order, 3);
    EXPECT_NEAR(fa.kappa, oracle::frenet_kappa(example1_metric, gamma, s), 1e-5);
    EXPECT_NEAR(fa.kappa, std::sqrt(2.5) / std::fabs(s), 1e-12);
    EXPECT_NEAR(fa.tau, 1.5 / std::fabs(s), 1e-12);
    EXPECT_EQ(fa.epsilon3, -kin.epsilon1 * fa.epsilon2);
  }
}

TEST(Frenet, VaryingAlphaCurveMatchesReference) {
  const Curve curve = varying_alpha_curve();
  for (double s : {-0.5, 0.2, 1.3}) EXPECT_LT(dist(curve.point(s), varying_alpha_point(s)), 1e-14);
  const auto kin = kinematics(curve, curve.grid_parameters(7));
  EXPECT_EQ(kin.epsilon1, 1);
  EXPECT_NEAR(kin.c, 0.5, 1e-14);
  const FrenetApparatus fa = FrenetOracle(curve, kin).at(0.2);
  const FrenetClosedForm cf = FrenetClosedFormField(curve, kin).at(0.2);
  EXPECT_NEAR(fa.kappa, 0.37224832779488787, 1e-12);
  EXPECT_NEAR(fa.tau, 0.12160053304614199, 1e-12);
  EXPECT_NEAR(cf.kappa, 0.37224832779488787, 1e-12);
  EXPECT_NEAR(cf.tau, 0.12160053304614199, 1e-12);
  EXPECT_EQ(fa.epsilon2, 1);
  EXPECT_EQ(fa.epsilon3, -1);
  EXPECT_EQ(cf.epsilon2, 1);
  EXPECT_NEAR(fa.kappa, oracle::frenet_kappa(example2_metric, varying_alpha_point, 0.2), 1e-5);
}

TEST(Frenet, GeneratedLinesAgreeAcrossMethods) {
  oracle::Gen gen(5);
  int order3 = 0;
  for (int n = 0; n < 16; ++n) {
    const Curve curve = random_line(gen, n % 2 == 0);
    const auto ts = curve.sample_parameters(10, 100 + n);
    const auto kin = kinematics(curve, ts);
    if (!kin.has_delta) continue;
    const FrenetOracle direct(curve, kin);
    const FrenetClosedFormField closed(curve, kin);
    const FFrameField fframe(curve, kin);
    for (double s : ts) {
      FrenetApparatus fa;
      try {
        fa = direct.at(s);
      } catch (const Error&) {
        continue;
      }
      if (fa.order != 3) continue;
      ++order3;
      const FrenetClosedForm cf = closed.at(s);
      EXPECT_NEAR(cf.kappa, fa.kappa, 1e-8 * std::max(1.0, fa.kappa));
      EXPECT_NEAR(cf.tau, fa.tau, 1e-8 * std::max(1.0, fa.tau));
      EXPECT_EQ(cf.epsilon2, fa.epsilon2);
      EXPECT_EQ(fa.epsilon3, -kin.epsilon1 * fa.epsilon2);
      for (double r : fa.residuals) EXPECT_LT(r, 1e-8);
      const FFrame ff = fframe.at(s);
      EXPECT_LT(ff.orthonormality_residual, 1e-10);
      for (double r : ff.equation_residuals) EXPECT_LT(r, 1e-8);
    }
  }
  EXPECT_GT(order3, 50);
}

TEST(NullCartan, FlatNullCurve) {
  // (sinh 2t / 4, cosh 2t / 4, t/2): null, c = 1/2, distinguished
  const Curve curve(fixtures::flat(), {sinh(2.0 * t) / 4.0, cosh(2.0 * t) / 4.0, t / 2.0}, {}, "t", "null");
  const auto kin = kinematics(curve, {0.0, 0.3});
  EXPECT_EQ(kin.epsilon1, 0);
  EXPECT_NEAR(kin.c, 0.5, 1e-15);
  const NullCartanField field(curve, kin);
  for (double s : {-0.4, 0.3, 1.0}) {
    const NullCartanApparatus ap = field.at(s);
    const double ch = std::cosh(2 * s), sh = std::sinh(2 * s);
    EXPECT_LT(dist(ap.n, Vec3(sh, ch, 0)), 1e-12);
    EXPECT_LT(dist(ap.w, Vec3(-ch, -sh, 1)), 1e-12);  // −γ̇/(2c²) + ξ/c
    EXPECT_NEAR(ap.tau, -2.0, 1e-12);
    EXPECT_LT(ap.frame_residual, 1e-12);
    for (double r : ap.cartan_residuals) EXPECT_LT(r, 1e-10);
  }
}

TEST(NullCartan, Rejections) {
  const auto flat = fixtures::flat();
  const Curve fast(flat, {sinh(4.0 * t) / 4.0, cosh(4.0 * t) / 4.0, t}, {});
  const auto kf = kinematics(fast, {0.0});
  EXPECT_EQ(code_of([&] { NullCartanField(fast, kf).at(0.2); }), ErrorCode::NotDistinguishedParametrization);
  const Curve legendre(flat, {t, t, Expr(0.3)}, {});
  EXPECT_EQ(code_of([&] { NullCartanField(legendre, kinematics(legendre, {0.0})); }), ErrorCode::LegendreNullCurve);
  const Curve a = fixtures::curve_a();
  EXPECT_EQ(code_of([&] { NullCartanField(a, kinematics(a, {-1.0})); }), ErrorCode::InvalidCurve);
  EXPECT_EQ(code_of([&] { FFrameField(fast, kf); }), ErrorCode::NullTangent);
  EXPECT_EQ(code_of([&] { FrenetOracle(fast, kf).at(0.0); }), ErrorCode::NullTangent);
}

TEST(NullNormal, CurveBIsConstantFrame) {
  const Curve curve = fixtures::curve_b();
  const auto kin = kinematics(curve, {0.0});
  EXPECT_EQ(code_of([&] { FrenetOracle(curve, kin).at(0.0); }), ErrorCode::NullNormal);
  const NullNormalField field(curve, kin);
  for (double s : {-3.0, 0.0, 5.0}) {
    const NullNormalApparatus ap = field.at(s);
    EXPECT_LT(dist(ap.n, Vec3(4.0 / 3, 2.0 / 3, -4.0 / 3)), 1e-12);
    EXPECT_LT(dist(ap.w, Vec3(-0.5, 0.25, -0.5)), 1e-12);
    EXPECT_NEAR(ap.kappa, -2.0 / 3, 1e-12);
    EXPECT_NEAR(ap.alpha_recovered, 4.0 / 3, 1e-12);
  }
}

TEST(NullNormal, LegendreAndCurveC) {
  const Curve l = fixtures::example2_legendre();
  const NullNormalApparatus ap = NullNormalField(l, kinematics(l, {0.0})).at(0.7);
  EXPECT_LT(dist(ap.n, Vec3(std::cosh(0.7), std::sinh(0.7), -1)), 1e-12);
  EXPECT_NEAR(ap.kappa, 0.0, 1e-12);
  ASSERT_TRUE(ap.legendre_residual);
  EXPECT_LT(*ap.legendre_residual, 1e-12);

  const Curve c = fixtures::curve_c();
  const double a = fixtures::curve_c_constant();
  EXPECT_NEAR(a * a * a, a + 2, 1e-13);
  const NullNormalApparatus cp = NullNormalField(c, kinematics(c, {1.0})).at(1.0);
  EXPECT_NEAR(cp.kappa, (1 - 2 * a) / (2 * a), 1e-10);
  // the null partner of N: g(N, W) = 1 fixes the scale
  EXPECT_LT(dist(cp.w, Vec3(-2 * a * a, 2 * a, -8 * a) / 4.0), 1e-10);
}

TEST(NullNormal, Rejections) {
  const Curve unit = generate_slant(fixtures::example1(), t, t, 1.0, 1.0, {-0.2, 0.2});
  EXPECT_EQ(code_of([&] { NullNormalField(unit, kinematics(unit, {0.0})); }), ErrorCode::DegenerateSlant);
  const Curve a = fixtures::curve_a();
  const auto ka = kinematics(a, {-1.0});
  EXPECT_EQ(code_of([&] { NullNormalField(a, ka); }), ErrorCode::InvalidCurve);
  const Curve b = fixtures::curve_b();
  const auto kb = kinematics(b, {0.0});
  EXPECT_NO_THROW(NullNormalField(b, kb).at(0.0));
}

TEST(Analyze, RegimeDispatch) {
  const auto regime_of = [](const Curve& curve, double s) {
    const CurveAnalysis an = analyze_curve(curve, {s});
    EXPECT_EQ(an.points.size(), 1u);
    return an.points[0].regime;
  };
  EXPECT_EQ(regime_of(fixtures::curve_a(), -1.0), Regime::FrenetOrder3);
  EXPECT_EQ(regime_of(fixtures::curve_b(), 0.0), Regime::NullNormal);
  EXPECT_EQ(regime_of(fixtures::example2_legendre(), 0.0), Regime::NullNormal);
  EXPECT_EQ(regime_of(Curve(fixtures::flat(), {sinh(2.0 * t) / 4.0, cosh(2.0 * t) / 4.0, t / 2.0}, {}), 0.3),
            Regime::NullCartan);
  EXPECT_EQ(regime_of(Curve(fixtures::example1(), {Expr(0.5), Expr(-0.3), 1.0 + t}, {-0.5, 0.5}), 0.0),
            Regime::Geodesic);
  const Expr cube = pow(3.0 * t, Rational::make(1, 3));
  const Curve null_geo(fixtures::example1(), {cube, cube, -(cube * cube)}, {0.1, 4.0});
  EXPECT_EQ(regime_of(null_geo, 1.0), Regime::NullGeodesic);

  const Curve a = fixtures::curve_a();
  const CurveAnalysis an = analyze_curve(a, {-1.0, -2.0});
  ASSERT_TRUE(an.points[0].closed_form);
  ASSERT_TRUE(an.points[0].f_frame);
  EXPECT_EQ(an.points[0].dependence, DependenceCase::Independent);
}

TEST(Analyze, PointErrorsAreRecorded) {
  const Curve fast(fixtures::flat(), {sinh(4.0 * t) / 4.0, cosh(4.0 * t) / 4.0, t}, {});
  const CurveAnalysis an = analyze_curve(fast, {0.0, 0.5});
  for (const CurvePoint& p : an.points) {
    EXPECT_FALSE(p.regime);
    ASSERT_TRUE(p.error_code);
    EXPECT_EQ(*p.error_code, ErrorCode::NotDistinguishedParametrization);
  }
}
