#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "oracle.hpp"
#include "slantgeom/error.hpp"
#include "slantgeom/fixtures.hpp"
#include "slantgeom/parse.hpp"

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

oracle::M example1_metric(const oracle::V& p) {
  oracle::M g;
  g << -2 * p.z(), 0, 0, 0, 4 * p.x() * p.x() + 2 * p.z(), 2 * p.x(), 0, 2 * p.x(), 1;
  return g;
}

}  // namespace

TEST(Kinematics, FixtureCurves) {
  const Curve a = fixtures::curve_a();
  const CurveKinematics ka = kinematics(a, {-2.0, -1.0, -0.5});
  EXPECT_EQ(ka.causal, CausalCharacter::Timelike);
  EXPECT_EQ(ka.epsilon1, -1);
  EXPECT_DOUBLE_EQ(ka.c, 1.0);
  ASSERT_TRUE(ka.has_delta);
  for (double s : {-2.0, -1.0, -0.5}) EXPECT_NEAR(a.value(ka.delta, s), 1 / s, 1e-14);

  const CurveKinematics kb = kinematics(fixtures::curve_b(), {-1.0, 0.0, 1.0});
  EXPECT_EQ(kb.epsilon1, 1);
  EXPECT_DOUBLE_EQ(kb.c, 0.5);

  const CurveKinematics kc = kinematics(fixtures::curve_c(), {0.5, 1.0, 2.0});
  EXPECT_EQ(kc.epsilon1, 1);
  EXPECT_NEAR(kc.c, 0.0, 1e-15);

  const Curve l = fixtures::example2_legendre();
  const CurveKinematics kl = kinematics(l, {0.0, 1.0});
  EXPECT_EQ(kl.epsilon1, 1);
  EXPECT_EQ(kl.c, 0.0);
  EXPECT_NEAR(l.value(kl.delta, 0.3), -1.0, 1e-14);
  EXPECT_NEAR(l.value(l.alpha(), 0.3), 1.0, 1e-14);
}

TEST(Kinematics, AccelerationMatchesFiniteDifferenceOracle) {
  const Curve a = fixtures::curve_a();
  const oracle::CurveFn gamma = [](double s) { return oracle::V(0, -2 * std::sqrt(-s), s); };
  const oracle::CurveFn vel = [&](double s) { return oracle::derivative(gamma, s, 1e-5); };
  for (double s : {-1.7, -1.0, -0.6}) {
    const Vec3 want = oracle::covariant(example1_metric, gamma, vel, s);
    const Vec3 got = covariant_accel(a, s);
    EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-5 * std::max(1.0, want.norm()));
  }
}

TEST(Kinematics, Errors) {
  const auto flat = fixtures::flat();
  EXPECT_EQ(code_of([&] { kinematics(Curve(flat, {Expr(), sin(t), cos(t)}, {}), {0.1, 0.5}); }), ErrorCode::NotSlant);
  EXPECT_EQ(code_of([&] { kinematics(Curve(flat, {Expr(), t * t, Expr()}, {}), {0.1, 0.5}); }),
            ErrorCode::NotConstantSpeed);
  EXPECT_EQ(code_of([&] { kinematics(fixtures::curve_c(), {-1.0}); }), ErrorCode::InvalidCurve);
  EXPECT_EQ(code_of([&] { Curve(flat, {Expr::variable("x"), t, t}, {}); }), ErrorCode::InvalidCurve);
  EXPECT_EQ(code_of([&] { Curve(flat, {t, t, t}, {1.0, 0.0}); }), ErrorCode::InvalidCurve);
  // (0, t, 0) leaves z > 0 in example 2
  EXPECT_EQ(code_of([&] { kinematics(Curve(fixtures::example2(), {Expr(), t, Expr()}, {}), {0.0}); }),
            ErrorCode::InvalidCurve);
}

TEST(Parameters, SamplesStayInsideTheInterval) {
  const Curve c = fixtures::curve_c();
  const auto a = c.sample_parameters(50, 3), b = c.sample_parameters(50, 3);
  EXPECT_EQ(a, b);
  for (double s : a) {
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 4.0);
  }
  const auto g = fixtures::curve_a().grid_parameters(5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_NEAR(g.front(), -3.8, 1e-12);
  EXPECT_NEAR(g.back(), -0.2, 1e-12);
}

TEST(GenerateSlant, EtaOfVelocityIsTheRequestedConstant) {
  oracle::Gen gen(21);
  for (int n = 0; n < 30; ++n) {
    Expr x(gen.uniform(-1, 1)), y(gen.uniform(-1, 1));
    for (int k = 1; k <= gen.integer(1, 3); ++k) {
      x = x + gen.uniform(-1, 1) * pow(t, static_cast<std::int64_t>(k));
      y = y + gen.uniform(-1, 1) * pow(t, static_cast<std::int64_t>(k));
    }
    const double c = gen.uniform(-2, 2), z0 = gen.uniform(0.5, 1.5);
    const Curve curve = generate_slant(fixtures::example1(), x, y, c, z0);
    EXPECT_DOUBLE_EQ(curve.point(0.0).z(), z0);
    const Expr slant = curve.eta_of(curve.velocity());
    for (double s : {-0.7, 0.0, 0.4, 1.1}) EXPECT_NEAR(curve.value(slant, s), c, 1e-12);
  }
}

TEST(GenerateSlant, Rejections) {
  EXPECT_EQ(code_of([] { generate_slant(fixtures::example1(), sin(t), t, 0.0, 1.0); }), ErrorCode::NonPolynomialInput);
  const auto bad = std::make_shared<const ParacontactStructure>(
      Chart{}, MatExpr{{{Expr(-1.0), Expr(), Expr()}, {Expr(), Expr(1.0), Expr()}, {Expr(), Expr(), Expr(1.0)}}},
      MatExpr{{{Expr(), Expr(1.0), Expr()}, {Expr(1.0), Expr(), Expr()}, {Expr(), Expr(), Expr()}}},
      VecExpr{Expr(), Expr(), Expr(1.0)}, VecExpr{Expr::variable("z"), Expr(), Expr(1.0)});
  EXPECT_EQ(code_of([&] { generate_slant(bad, t, t, 0.0, 1.0); }), ErrorCode::InvalidStructure);
}

TEST(Dependence, DependentCasesAreGeodesics) {
  struct Case {
    Curve curve;
    DependenceCase expected;
  };
  const auto ex1 = fixtures::example1();
  const Case cases[] = {
      {Curve(ex1, {Expr(0.5), Expr(-0.3), 1.0 + t}, {-0.5, 0.5}), DependenceCase::TangentCollinearXi},
      {Curve(ex1, {sqrt(t), -sqrt(t), 2.0 * t}, {0.0, 5.0}), DependenceCase::TangentXiMinusPhi},
      {Curve(ex1, {sqrt(3.0 * t), sqrt(3.0 * t), -2.0 * t}, {0.0, 5.0}), DependenceCase::TangentXiPlusPhi},
  };
  for (const Case& cs : cases) {
    const auto ts = cs.curve.grid_parameters(7);
    const CurveKinematics k = kinematics(cs.curve, ts);
    for (double s : ts) EXPECT_EQ(dependence_case(cs.curve, k.c, s), cs.expected);
    EXPECT_TRUE(is_geodesic(cs.curve, ts).geodesic);
  }
  const Curve a = fixtures::curve_a();
  EXPECT_EQ(dependence_case(a, 1.0, -1.0), DependenceCase::Independent);
  EXPECT_FALSE(is_geodesic(a, {-1.0}).geodesic);
}

TEST(Dependence, UnitSlantWithUnitConstantHasNullAcceleration) {
  // ε₁ = 1, c = 1 but not a geodesic: the acceleration is a nonzero null vector
  const Curve curve = generate_slant(fixtures::example1(), t, t, 1.0, 1.0, {-0.2, 0.2});
  const auto ts = curve.grid_parameters(5);
  const CurveKinematics k = kinematics(curve, ts);
  EXPECT_EQ(k.epsilon1, 1);
  const Expr q = curve.inner(curve.acceleration(), curve.acceleration());
  for (double s : ts) {
    EXPECT_GT(covariant_accel(curve, s).norm(), 0.1);
    EXPECT_NEAR(curve.value(q, s), 0.0, 1e-12);
  }
}

TEST(Geodesics, NullLegendreCurvesArePregeodesic) {
  // non-affine parametrization: ∇γ̇γ̇ is parallel to γ̇ but nonzero
  const Curve curve(fixtures::example2(), {t * t * t + t, t * t * t + t, Expr(0.8)}, {-1.0, 1.0});
  const auto ts = curve.grid_parameters(9);
  const CurveKinematics k = kinematics(curve, ts);
  EXPECT_EQ(k.epsilon1, 0);
  EXPECT_EQ(k.c, 0.0);
  EXPECT_FALSE(is_geodesic(curve, ts).geodesic);
  for (double s : ts) {
    const Vec3 a = covariant_accel(curve, s), v = curve.value(curve.velocity(), s);
    EXPECT_LT(a.cross(v).norm(), 1e-12);
  }
}
