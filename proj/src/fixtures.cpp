#include "slantgeom/fixtures.hpp"

#include <cmath>
#include <limits>

#include "slantgeom/parse.hpp"

namespace slantgeom::fixtures {

namespace {

MatExpr matrix(const char* const (&rows)[3][3]) {
  MatExpr m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = parse_expr(rows[i][j]);
  return m;
}

VecExpr vector(const char* const (&v)[3]) { return {parse_expr(v[0]), parse_expr(v[1]), parse_expr(v[2])}; }

Chart chart_with(const char* domain) {
  Chart chart;
  chart.domain = {parse_expr(domain)};
  chart.box.lo = {-2.0, -2.0, 0.25};
  chart.box.hi = {2.0, 2.0, 2.0};
  return chart;
}

const char* const kExample1Metric[3][3] = {{"-2*z", "0", "0"}, {"0", "4*x^2 + 2*z", "2*x"}, {"0", "2*x", "1"}};
const char* const kExample1Phi[3][3] = {{"0", "1", "0"}, {"1", "0", "0"}, {"-2*x", "0", "0"}};
const char* const kExample2Metric[3][3] = {{"-2*z", "0", "0"}, {"0", "2*z", "0"}, {"0", "0", "1"}};
const char* const kFlatMetric[3][3] = {{"-1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}};
const char* const kSwapPhi[3][3] = {{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "0"}};

}  // namespace

std::shared_ptr<const ParacontactStructure> example1_scaled_phi(double factor) {
  MatExpr phi = matrix(kExample1Phi);
  for (auto& row : phi)
    for (auto& e : row) e = factor * e;
  // Curve (a) lives in z < 0, so the chart keeps both half-spaces.
  return std::make_shared<const ParacontactStructure>(chart_with("z^2"), matrix(kExample1Metric), phi,
                                                      vector({"0", "0", "1"}), vector({"0", "2*x", "1"}));
}

std::shared_ptr<const ParacontactStructure> example1() {
  static const auto s = example1_scaled_phi(1.0);
  return s;
}

std::shared_ptr<const ParacontactStructure> example2() {
  static const auto s = std::make_shared<const ParacontactStructure>(
      chart_with("z"), matrix(kExample2Metric), matrix(kSwapPhi), vector({"0", "0", "1"}), vector({"0", "0", "1"}));
  return s;
}

std::shared_ptr<const ParacontactStructure> flat() {
  static const auto s = [] {
    Chart chart;
    return std::make_shared<const ParacontactStructure>(chart, matrix(kFlatMetric), matrix(kSwapPhi),
                                                        vector({"0", "0", "1"}), vector({"0", "0", "1"}));
  }();
  return s;
}

double curve_c_constant() {
  const double b = std::sqrt(26.0 / 27.0);
  return std::cbrt(1.0 - b) + std::cbrt(1.0 + b);
}

Curve curve_a() {
  return Curve(example1(), {Expr(), parse_expr("-2*sqrt(-t)"), parse_expr("t")}, {-std::numeric_limits<double>::infinity(), 0.0}, "t", "a");
}

Curve curve_b() {
  return Curve(example1(), {Expr(0.25), Expr::variable("t"), Expr(0.375)}, {}, "t", "b");
}

Curve curve_c() {
  const double a = curve_c_constant();
  const Expr t = Expr::variable("t");
  return Curve(example1(), {sqrt(t), -a * sqrt(t), a * t}, {0.0, std::numeric_limits<double>::infinity()}, "t", "c");
}

Curve example2_legendre() {
  return Curve(example2(), {parse_expr("cosh(t)"), parse_expr("sinh(t)"), Expr(0.5)}, {}, "t", "legendre");
}

}  // namespace slantgeom::fixtures
