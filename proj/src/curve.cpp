#include "slantgeom/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "slantgeom/error.hpp"
#include "slantgeom/polynomial.hpp"

namespace slantgeom {

Curve::Curve(std::shared_ptr<const ParacontactStructure> structure, VecExpr components, Interval interval,
             std::string parameter, std::string name)
    : structure_(std::move(structure)),
      components_(std::move(components)),
      interval_(interval),
      parameter_(std::move(parameter)),
      name_(std::move(name)) {
  if (!structure_) throw Error(ErrorCode::InvalidCurve, "curve without a structure");
  if (!(interval_.lo < interval_.hi)) throw Error(ErrorCode::InvalidCurve, "empty parameter interval");
  const Chart& chart = structure_->chart();
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& v : free_variables(components_[i])) {
      if (v != parameter_) {
        throw Error(ErrorCode::InvalidCurve,
                    "component " + chart.coordinates[i] + " depends on '" + v + "', not only on '" + parameter_ + "'");
      }
    }
    along_[chart.coordinates[i]] = components_[i];
  }

  const ParacontactStructure& s = *structure_;
  std::vector<Expr> fields;
  fields.reserve(53);
  for (const auto& row : s.metric()) fields.insert(fields.end(), row.begin(), row.end());
  for (const auto& row : s.phi()) fields.insert(fields.end(), row.begin(), row.end());
  fields.insert(fields.end(), s.xi().begin(), s.xi().end());
  fields.insert(fields.end(), s.eta().begin(), s.eta().end());
  for (const auto& m : s.connection().gamma)
    for (const auto& row : m) fields.insert(fields.end(), row.begin(), row.end());
  fields.push_back(s.alpha());
  fields.push_back(s.beta());

  const std::vector<Expr> composed = substitute(fields, along_);
  std::size_t k = 0;
  for (auto& row : metric_)
    for (auto& e : row) e = composed[k++];
  for (auto& row : phi_)
    for (auto& e : row) e = composed[k++];
  for (auto& e : xi_) e = composed[k++];
  for (auto& e : eta_) e = composed[k++];
  for (auto& m : gamma_)
    for (auto& row : m)
      for (auto& e : row) e = composed[k++];
  alpha_ = composed[k++];
  beta_ = composed[k++];

  for (std::size_t i = 0; i < 3; ++i) velocity_[i] = differentiate(components_[i], parameter_);
  acceleration_ = covariant_along(velocity_);
}

Expr Curve::compose(const Expr& f) const { return substitute(f, along_); }

Expr Curve::inner(const VecExpr& a, const VecExpr& b) const {
  Expr out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a[i].is_constant(0.0)) continue;
    for (std::size_t j = 0; j < 3; ++j) {
      if (b[j].is_constant(0.0) || metric_[i][j].is_constant(0.0)) continue;
      out = out + metric_[i][j] * a[i] * b[j];
    }
  }
  return out;
}

Expr Curve::eta_of(const VecExpr& v) const { return eta_[0] * v[0] + eta_[1] * v[1] + eta_[2] * v[2]; }

VecExpr Curve::covariant_along(const VecExpr& v) const {
  VecExpr out;
  for (std::size_t k = 0; k < 3; ++k) {
    Expr acc = differentiate(v[k], parameter_);
    for (std::size_t i = 0; i < 3; ++i) {
      if (velocity_[i].is_constant(0.0)) continue;
      for (std::size_t j = 0; j < 3; ++j) {
        if (v[j].is_constant(0.0) || gamma_[k][i][j].is_constant(0.0)) continue;
        acc = acc + gamma_[k][i][j] * velocity_[i] * v[j];
      }
    }
    out[k] = acc;
  }
  return out;
}

namespace {

std::pair<double, double> finite_window(const Interval& in) {
  double lo = in.lo, hi = in.hi;
  const bool flo = std::isfinite(lo), fhi = std::isfinite(hi);
  if (!flo && !fhi) {
    lo = -2.0;
    hi = 2.0;
  } else if (!flo) {
    lo = hi - 4.0;
  } else if (!fhi) {
    hi = lo + 4.0;
  }
  const double margin = 0.05 * (hi - lo);
  return {lo + margin, hi - margin};
}

}  // namespace

std::vector<double> Curve::sample_parameters(std::size_t n, std::uint64_t seed) const {
  const auto [lo, hi] = finite_window(interval_);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> ts(n);
  for (auto& t : ts) t = dist(rng);
  return ts;
}

std::vector<double> Curve::grid_parameters(std::size_t n) const {
  const auto [lo, hi] = finite_window(interval_);
  std::vector<double> ts;
  if (n == 0) return ts;
  if (n == 1) return {0.5 * (lo + hi)};
  for (std::size_t i = 0; i < n; ++i) ts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return ts;
}

void Curve::check_domain(const std::vector<double>& ts) const {
  const Chart& chart = structure_->chart();
  for (double t : ts) {
    const std::string where = "curve '" + name_ + "' at " + parameter_ + "=" + std::to_string(t);
    if (!interval_.contains(t)) throw Error(ErrorCode::InvalidCurve, where + " is outside the parameter interval");
    Vec3 p;
    try {
      p = point(t);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidCurve, where + ": " + e.what());
    }
    if (!chart.contains(p)) throw Error(ErrorCode::InvalidCurve, where + " leaves the chart domain");
  }
}

std::string_view to_string(CausalCharacter c) noexcept {
  switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Null: return "null";
  }
  return "unknown";
}

CurveKinematics kinematics(const Curve& curve, const std::vector<double>& ts, const KinematicsOptions& options) {
  if (ts.empty()) throw Error(ErrorCode::InvalidCurve, "no parameter samples");
  curve.check_domain(ts);
  const VecExpr& v = curve.velocity();
  const Expr speed = curve.inner(v, v);
  const Expr slant = curve.eta_of(v);
  const Tape tape({speed, slant, curve.dot(slant)}, {curve.parameter()});

  std::vector<double> q, e, de;
  for (double t : ts) {
    const auto out = tape({t});
    q.push_back(out[0]);
    e.push_back(out[1]);
    de.push_back(out[2]);
  }
  auto max_dev = [](const std::vector<double>& xs, double target) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::isnan(x) ? std::numeric_limits<double>::infinity() : std::fabs(x - target));
    return m;
  };

  CurveKinematics k;
  if (max_dev(q, 0.0) < options.causal_tol) {
    k.causal = CausalCharacter::Null;
    k.epsilon1 = 0;
  } else if (max_dev(q, 1.0) < options.causal_tol) {
    k.causal = CausalCharacter::Spacelike;
    k.epsilon1 = 1;
  } else if (max_dev(q, -1.0) < options.causal_tol) {
    k.causal = CausalCharacter::Timelike;
    k.epsilon1 = -1;
  } else {
    throw Error(ErrorCode::NotConstantSpeed, "g(dot gamma, dot gamma) is neither 0 nor ±1 along curve '" + curve.name() +
                                                 "' (deviation " + std::to_string(max_dev(q, q.front())) + ")");
  }
  k.speed_residual = max_dev(q, static_cast<double>(k.epsilon1));

  double mean = 0.0;
  for (double x : e) mean += x;
  mean /= static_cast<double>(e.size());
  k.c = mean;
  k.slant_residual = std::max(max_dev(e, mean), max_dev(de, 0.0));
  if (!(k.slant_residual < options.slant_tol)) {
    throw Error(ErrorCode::NotSlant, "eta(dot gamma) is not constant along curve '" + curve.name() + "' (residual " +
                                         std::to_string(k.slant_residual) + ")");
  }

  k.gap = static_cast<double>(k.epsilon1) - k.c * k.c;
  k.alpha = curve.alpha();
  k.beta = curve.beta();
  if (k.epsilon1 != 0 && std::fabs(k.gap) > options.causal_tol) {
    k.delta = curve.inner(curve.acceleration(), curve.phi_of(v)) / std::fabs(k.gap);
    k.has_delta = true;
  }
  return k;
}

Vec3 covariant_accel(const Curve& curve, double t) { return curve.value(curve.acceleration(), t); }

GeodesicCheck is_geodesic(const Curve& curve, const std::vector<double>& ts, double tol) {
  const VecExpr& a = curve.acceleration();
  const Tape tape({a[0], a[1], a[2]}, {curve.parameter()});
  GeodesicCheck g;
  for (double t : ts) {
    const auto out = tape({t});
    for (double x : out) g.residual = std::max(g.residual, std::isnan(x) ? std::numeric_limits<double>::infinity() : std::fabs(x));
  }
  g.geodesic = g.residual < tol;
  return g;
}

std::string_view to_string(DependenceCase d) noexcept {
  switch (d) {
    case DependenceCase::Independent: return "independent";
    case DependenceCase::TangentCollinearXi: return "tangent-collinear-xi";
    case DependenceCase::TangentXiPlusPhi: return "tangent-equals-c*xi+phi(tangent)";
    case DependenceCase::TangentXiMinusPhi: return "tangent-equals-c*xi-phi(tangent)";
  }
  return "unknown";
}

DependenceCase dependence_case(const Curve& curve, double c, double t, double tol) {
  const Vec3 v = curve.value(curve.velocity(), t);
  const Vec3 xi = curve.value(curve.xi(), t);
  const Vec3 pv = curve.value(curve.phi_of(curve.velocity()), t);
  const Vec3 rest = v - c * xi;
  if (rest.cwiseAbs().maxCoeff() < tol) return DependenceCase::TangentCollinearXi;
  if ((rest - pv).cwiseAbs().maxCoeff() < tol) return DependenceCase::TangentXiPlusPhi;
  if ((rest + pv).cwiseAbs().maxCoeff() < tol) return DependenceCase::TangentXiMinusPhi;
  return DependenceCase::Independent;
}

Curve generate_slant(std::shared_ptr<const ParacontactStructure> structure, const Expr& x, const Expr& y,
                     double c, double z0, Interval interval, std::string parameter, std::string name) {
  if (!structure) throw Error(ErrorCode::InvalidStructure, "no structure");
  const Chart& chart = structure->chart();
  const VecExpr& eta = structure->eta();
  if (!simplify(eta[2]).is_constant(1.0) || depends_on(eta[0], chart.coordinates[2]) ||
      depends_on(eta[1], chart.coordinates[2])) {
    throw Error(ErrorCode::InvalidStructure,
                "slant generator needs eta = eta1(x,y) dx + eta2(x,y) dy + dz");
  }
  const auto px = as_polynomial(x, parameter);
  const auto py = as_polynomial(y, parameter);
  if (!px || !py) throw Error(ErrorCode::NonPolynomialInput, "x(t) and y(t) must be polynomials in " + parameter);

  const std::map<std::string, Expr, std::less<>> along{{chart.coordinates[0], x}, {chart.coordinates[1], y}};
  const auto e1 = as_polynomial(substitute(eta[0], along), parameter);
  const auto e2 = as_polynomial(substitute(eta[1], along), parameter);
  if (!e1 || !e2) {
    throw Error(ErrorCode::NonPolynomialInput, "eta components are not polynomial along (x(t), y(t))");
  }
  const Polynomial rate = Polynomial::constant(c) - *e1 * px->derivative() - *e2 * py->derivative();
  const Polynomial z = rate.antiderivative(z0);
  // components first: argument evaluation order would let the move win
  VecExpr components{px->to_expr(parameter), py->to_expr(parameter), z.to_expr(parameter)};
  return Curve(std::move(structure), std::move(components), interval, std::move(parameter), std::move(name));
}

}  // namespace slantgeom
