#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "oracle.hpp"
#include "slantgeom/error.hpp"
#include "slantgeom/parse.hpp"
#include "slantgeom/polynomial.hpp"

using namespace slantgeom;

namespace {

// Random expressions in x, y that are defined everywhere (the arguments of
// sqrt and log are kept positive).
Expr random_expr(oracle::Gen& gen, int depth) {
  const Expr x = Expr::variable("x"), y = Expr::variable("y");
  if (depth == 0) {
    switch (gen.integer(0, 2)) {
      case 0: return x;
      case 1: return y;
      default: return Expr(std::round(gen.uniform(-3, 3) * 4) / 4);
    }
  }
  const Expr a = random_expr(gen, depth - 1);
  const Expr b = random_expr(gen, depth - 1);
  switch (gen.integer(0, 9)) {
    case 0: return a + b;
    case 1: return a - b;
    case 2: return a * b;
    case 3: return a / (2.0 + a * a);
    case 4: return pow(a, static_cast<std::int64_t>(gen.integer(2, 3)));
    case 5: return sqrt(1.0 + b * b);
    case 6: return sin(a) + cos(b);
    case 7: return log(1.5 + a * a);
    case 8: return sinh(a / 4.0) * cosh(b / 4.0);
    default: return exp(a / (4.0 + b * b));
  }
}

double eval_xy(const Expr& e, double x, double y) { return evaluate(e, Binding{{"x", x}, {"y", y}}); }

}  // namespace

TEST(Expr, DerivativeMatchesFiniteDifferences) {
  oracle::Gen gen(7);
  int checked = 0;
  for (int n = 0; n < 100; ++n) {
    const Expr e = random_expr(gen, gen.integer(1, 4));
    const double x = gen.uniform(-1.5, 1.5), y = gen.uniform(-1.5, 1.5);
    const double h = 1e-5;
    const double fd = (eval_xy(e, x + h, y) - eval_xy(e, x - h, y)) / (2 * h);
    const double exact = eval_xy(differentiate(e, "x"), x, y);
    EXPECT_LT(std::fabs(exact - fd) / std::max(1.0, std::fabs(exact)), 1e-6) << e.to_string();
    ++checked;
  }
  EXPECT_EQ(checked, 100);
}

TEST(Expr, ProductRule) {
  oracle::Gen gen(11);
  for (int n = 0; n < 50; ++n) {
    const Expr f = random_expr(gen, 3), g = random_expr(gen, 3);
    const Expr lhs = differentiate(f * g, "y");
    const Expr rhs = differentiate(f, "y") * g + f * differentiate(g, "y");
    const double x = gen.uniform(-1, 1), y = gen.uniform(-1, 1);
    const double l = eval_xy(lhs, x, y), r = eval_xy(rhs, x, y);
    EXPECT_NEAR(l, r, 1e-9 * std::max(1.0, std::fabs(r)));
  }
}

TEST(Expr, DerivativeIsLinear) {
  oracle::Gen gen(12);
  for (int n = 0; n < 50; ++n) {
    const Expr f = random_expr(gen, 3), g = random_expr(gen, 3);
    const double a = gen.uniform(-2, 2), b = gen.uniform(-2, 2);
    const double x = gen.uniform(-1, 1), y = gen.uniform(-1, 1);
    const double l = eval_xy(differentiate(a * f + b * g, "x"), x, y);
    const double r = a * eval_xy(differentiate(f, "x"), x, y) + b * eval_xy(differentiate(g, "x"), x, y);
    EXPECT_NEAR(l, r, 1e-9 * std::max(1.0, std::fabs(r)));
  }
}

TEST(Expr, SimplifyPreservesValue) {
  oracle::Gen gen(13);
  for (int n = 0; n < 100; ++n) {
    const Expr e = random_expr(gen, 4);
    const double x = gen.uniform(-1, 1), y = gen.uniform(-1, 1);
    EXPECT_EQ(eval_xy(simplify(e), x, y), eval_xy(e, x, y)) << e.to_string();
  }
}

TEST(Expr, EvaluationIsDeterministic) {
  oracle::Gen gen(14);
  const Expr e = random_expr(gen, 5);
  const double a = eval_xy(e, 0.3, -0.7);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(eval_xy(e, 0.3, -0.7), a);
}

TEST(Expr, TapeIsBitIdenticalToEvaluate) {
  oracle::Gen gen(15);
  std::vector<Expr> outs;
  for (int n = 0; n < 20; ++n) outs.push_back(random_expr(gen, 4));
  const Tape tape(outs, {"x", "y"});
  for (int k = 0; k < 10; ++k) {
    const double x = gen.uniform(-1, 1), y = gen.uniform(-1, 1);
    const auto got = tape({x, y});
    for (std::size_t i = 0; i < outs.size(); ++i) EXPECT_EQ(got[i], eval_xy(outs[i], x, y));
  }
}

TEST(Expr, BatchOperationsMatchSingleOnes) {
  oracle::Gen gen(16);
  std::vector<Expr> es;
  for (int n = 0; n < 10; ++n) es.push_back(random_expr(gen, 3));
  const auto ds = differentiate(es, "x");
  const std::map<std::string, Expr, std::less<>> rep{{"y", Expr::variable("x") * 2.0}};
  const auto ss = substitute(es, rep);
  for (std::size_t i = 0; i < es.size(); ++i) {
    EXPECT_EQ(eval_xy(ds[i], 0.2, 0.4), eval_xy(differentiate(es[i], "x"), 0.2, 0.4));
    EXPECT_EQ(eval_xy(ss[i], 0.2, 0.0), eval_xy(es[i], 0.2, 0.4));
  }
}

TEST(Expr, PrintedFormParsesBack) {
  oracle::Gen gen(17);
  for (int n = 0; n < 100; ++n) {
    const Expr e = random_expr(gen, 4);
    const Expr back = parse_expr(e.to_string());
    const double x = gen.uniform(-1, 1), y = gen.uniform(-1, 1);
    EXPECT_NEAR(eval_xy(back, x, y), eval_xy(e, x, y), 1e-12 * std::max(1.0, std::fabs(eval_xy(e, x, y))))
        << e.to_string();
  }
}

TEST(Expr, ParsesOperatorsAndFunctions) {
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("2^3^2"), {}), 512.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("-2^2"), {}), -4.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("t^(3/2)"), {{"t", 4.0}}), 8.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("sqrt(4*x^2 + 2*z)"), {{"x", 1.0}, {"z", 2.0}}), std::sqrt(8.0));
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("sign(-3) + abs(-2)"), {}), 1.0);
  EXPECT_NEAR(evaluate(parse_expr("cosh(1)^2 - sinh(1)^2"), {}), 1.0, 1e-15);
  EXPECT_NEAR(evaluate(parse_expr("cos(pi)"), {}), -1.0, 1e-15);
}

TEST(Expr, ParseErrorsAreLocated) {
  try {
    parse_expr("x + * y", 4, 10);
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 14u);
  }
  EXPECT_THROW(parse_expr("sqrt(x"), ParseError);
  EXPECT_THROW(parse_expr("foo(x)"), ParseError);
  EXPECT_THROW(parse_expr("x^y"), ParseError);
  EXPECT_THROW(parse_expr(""), ParseError);
  EXPECT_THROW(parse_expr("1.2.3"), ParseError);
}

TEST(Expr, DomainViolations) {
  auto code = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code([] { evaluate(parse_expr("sqrt(x)"), {{"x", -1.0}}); }), ErrorCode::DomainViolation);
  EXPECT_EQ(code([] { evaluate(parse_expr("log(x)"), {{"x", 0.0}}); }), ErrorCode::DomainViolation);
  EXPECT_EQ(code([] { evaluate(parse_expr("1/x"), {{"x", 0.0}}); }), ErrorCode::DomainViolation);
  EXPECT_EQ(code([] { evaluate(parse_expr("x^(1/2)"), {{"x", -4.0}}); }), ErrorCode::DomainViolation);
  EXPECT_EQ(code([] { evaluate(parse_expr("x + y"), {{"x", 1.0}}); }), ErrorCode::UnboundVariable);
  // 0/x keeps its restriction
  EXPECT_EQ(code([] { evaluate(Expr() / Expr::variable("x"), {{"x", 0.0}}); }), ErrorCode::DomainViolation);
}

TEST(Expr, FreeVariablesAndSubstitution) {
  const Expr e = parse_expr("x*y + sin(z)");
  const auto vars = free_variables(e);
  EXPECT_EQ(vars.size(), 3u);
  EXPECT_TRUE(depends_on(e, "z"));
  const Expr s = substitute(e, {{"z", Expr(0.0)}, {"y", Expr::variable("x")}});
  EXPECT_FALSE(depends_on(s, "y"));
  EXPECT_DOUBLE_EQ(evaluate(s, {{"x", 3.0}}), 9.0);
}

TEST(Expr, SharedNodesStayLinear) {
  Expr e = Expr::variable("x");
  for (int i = 0; i < 60; ++i) e = e * e + e;  // tree size 2^60, DAG size linear
  EXPECT_LT(node_count(e), 200u);
  EXPECT_TRUE(std::isfinite(evaluate(e, {{"x", 1e-30}})));
  EXPECT_LT(node_count(differentiate(e, "x")), 2000u);
}

TEST(Polynomial, RecognisesAndIntegrates) {
  const auto p = as_polynomial(parse_expr("(1 + 2*t)^2 - t/2"), "t");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->coefficients(), (std::vector<double>{1.0, 3.5, 4.0}));
  EXPECT_FALSE(as_polynomial(parse_expr("sqrt(t)"), "t"));
  EXPECT_FALSE(as_polynomial(parse_expr("t*x"), "t"));
  const Polynomial a = p->antiderivative(5.0);
  EXPECT_DOUBLE_EQ(a(0.0), 5.0);
  EXPECT_DOUBLE_EQ(a(1.0), 5.0 + 1.0 + 1.75 + 4.0 / 3.0);
  EXPECT_EQ(a.derivative().coefficients(), p->coefficients());
  EXPECT_DOUBLE_EQ(evaluate(p->to_expr("s"), {{"s", 2.0}}), (*p)(2.0));
}
