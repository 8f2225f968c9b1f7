#include "slantgeom/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "slantgeom/error.hpp"

namespace slantgeom {

VecExpr basis_field(int i) {
  VecExpr v;
  v[static_cast<std::size_t>(i)] = Expr(1.0);
  return v;
}

VecExpr operator+(const VecExpr& a, const VecExpr& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
VecExpr operator-(const VecExpr& a, const VecExpr& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
VecExpr operator*(const Expr& s, const VecExpr& v) { return {s * v[0], s * v[1], s * v[2]}; }

VecExpr apply(const MatExpr& m, const VecExpr& v) {
  VecExpr out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

Vec3 evaluate(const VecExpr& v, const Binding& binding) {
  return {evaluate(v[0], binding), evaluate(v[1], binding), evaluate(v[2], binding)};
}

Binding Chart::bind(const Vec3& p) const {
  Binding b;
  for (std::size_t i = 0; i < 3; ++i) b[coordinates[i]] = p[static_cast<Eigen::Index>(i)];
  return b;
}

bool Chart::contains(const Vec3& p) const {
  const Binding b = bind(p);
  for (const auto& c : domain) {
    try {
      if (!(evaluate(c, b) > 0.0)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

std::vector<Vec3> sample_points(const Chart& chart, const SampleOptions& options) {
  const Box& box = options.override_box ? options.box : chart.box;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(box.lo[i] < box.hi[i])) throw Error(ErrorCode::SamplingFailed, "empty sampling box");
  }
  std::mt19937_64 rng(options.seed);
  std::array<std::uniform_real_distribution<double>, 3> axis{
      std::uniform_real_distribution<double>(box.lo[0], box.hi[0]),
      std::uniform_real_distribution<double>(box.lo[1], box.hi[1]),
      std::uniform_real_distribution<double>(box.lo[2], box.hi[2])};
  std::vector<Vec3> points;
  points.reserve(options.count);
  const std::size_t budget = 1000 + 10000 * options.count;
  for (std::size_t attempt = 0; points.size() < options.count; ++attempt) {
    if (attempt == budget) {
      throw Error(ErrorCode::SamplingFailed,
                  "sampling box and domain constraints have (almost) no overlap");
    }
    const Vec3 p(axis[0](rng), axis[1](rng), axis[2](rng));
    if (chart.contains(p)) points.push_back(p);
  }
  return points;
}

namespace {

Expr det3(const MatExpr& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Expr cofactor(const MatExpr& m, std::size_t i, std::size_t j) {
  const std::size_t r0 = i == 0 ? 1 : 0, r1 = i == 2 ? 1 : 2;
  const std::size_t c0 = j == 0 ? 1 : 0, c1 = j == 2 ? 1 : 2;
  const Expr minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
  return (i + j) % 2 == 0 ? minor : -minor;
}

// X(f) = X^a ∂_a f
Expr directional(const Chart& chart, const VecExpr& x, const Expr& f) {
  Expr out;
  for (std::size_t a = 0; a < 3; ++a) {
    if (x[a].is_constant(0.0)) continue;
    out = out + x[a] * differentiate(f, chart.coordinates[a]);
  }
  return out;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace

Connection christoffel(const Chart& chart, const MatExpr& g) {
  const Expr det = det3(g);
  if (det.is_constant(0.0)) throw Error(ErrorCode::SingularMetric, "metric determinant is identically zero");

  MatExpr inv;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) inv[i][j] = cofactor(g, j, i) / det;

  // dg[a][i][j] = ∂_a g_ij
  std::array<MatExpr, 3> dg;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) dg[a][i][j] = differentiate(g[i][j], chart.coordinates[a]);

  Connection conn;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i; j < 3; ++j) {
        Expr sum;
        for (std::size_t l = 0; l < 3; ++l) {
          const Expr lowered = dg[i][j][l] + dg[j][i][l] - dg[l][i][j];
          if (lowered.is_constant(0.0) || inv[k][l].is_constant(0.0)) continue;
          sum = sum + inv[k][l] * lowered;
        }
        conn.gamma[k][i][j] = 0.5 * sum;
        conn.gamma[k][j][i] = conn.gamma[k][i][j];
      }
    }
  }
  return conn;
}

VecExpr covariant_derivative(const Chart& chart, const Connection& conn, const VecExpr& x,
                             const VecExpr& y) {
  VecExpr out;
  for (std::size_t k = 0; k < 3; ++k) {
    Expr acc = directional(chart, x, y[k]);
    for (std::size_t i = 0; i < 3; ++i) {
      if (x[i].is_constant(0.0)) continue;
      for (std::size_t j = 0; j < 3; ++j) {
        if (y[j].is_constant(0.0) || conn.gamma[k][i][j].is_constant(0.0)) continue;
        acc = acc + conn.gamma[k][i][j] * x[i] * y[j];
      }
    }
    out[k] = acc;
  }
  return out;
}

VecExpr lie_bracket(const Chart& chart, const VecExpr& x, const VecExpr& y) {
  VecExpr out;
  for (std::size_t k = 0; k < 3; ++k) out[k] = directional(chart, x, y[k]) - directional(chart, y, x[k]);
  return out;
}

ParacontactStructure::ParacontactStructure(Chart chart, MatExpr metric, MatExpr phi, VecExpr xi,
                                           VecExpr eta)
    : chart_(std::move(chart)),
      metric_(std::move(metric)),
      phi_(std::move(phi)),
      xi_(std::move(xi)),
      eta_(std::move(eta)) {
  const auto& c = chart_.coordinates;
  if (c[0].empty() || c[1].empty() || c[2].empty() || c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) {
    throw Error(ErrorCode::InvalidStructure, "chart needs three distinct coordinate names");
  }
  connection_ = christoffel(chart_, metric_);
  det_ = det3(metric_);
  const AlphaBeta ab = alpha_beta(chart_, connection_, phi_, xi_);
  alpha_ = ab.alpha;
  beta_ = ab.beta;

  std::vector<Expr> outputs;
  for (const auto& row : metric_) outputs.insert(outputs.end(), row.begin(), row.end());
  for (const auto& row : phi_) outputs.insert(outputs.end(), row.begin(), row.end());
  outputs.insert(outputs.end(), xi_.begin(), xi_.end());
  outputs.insert(outputs.end(), eta_.begin(), eta_.end());
  outputs.push_back(det_);
  tape_ = Tape(outputs, {c[0], c[1], c[2]});
  alpha_beta_tape_ = Tape({alpha_, beta_}, {c[0], c[1], c[2]});
}

Expr ParacontactStructure::inner(const VecExpr& a, const VecExpr& b) const {
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

Expr ParacontactStructure::eta_of(const VecExpr& v) const { return eta_[0] * v[0] + eta_[1] * v[1] + eta_[2] * v[2]; }

PointData ParacontactStructure::at(const Vec3& p) const {
  double in[3] = {p[0], p[1], p[2]};
  double out[25];
  tape_.run(in, out);
  PointData d;
  d.point = p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      d.g(i, j) = out[3 * i + j];
      d.phi(i, j) = out[9 + 3 * i + j];
    }
  for (int i = 0; i < 3; ++i) {
    d.xi[i] = out[18 + i];
    d.eta[i] = out[21 + i];
  }
  d.det_g = out[24];
  if (d.det_g == 0.0) throw Error(ErrorCode::SingularMetric, "metric is degenerate at the requested point");
  double ab[2];
  alpha_beta_tape_.run(in, ab);
  d.alpha = ab[0];
  d.beta = ab[1];
  return d;
}

namespace {

Expr d_eta_fields(const ParacontactStructure& s, const VecExpr& x, const VecExpr& y) {
  const Chart& chart = s.chart();
  return 0.5 * (directional(chart, x, s.eta_of(y)) - directional(chart, y, s.eta_of(x)) -
                s.eta_of(lie_bracket(chart, x, y)));
}

VecExpr torsion_fields(const ParacontactStructure& s, const VecExpr& x, const VecExpr& y) {
  const Chart& chart = s.chart();
  const VecExpr px = s.phi_of(x);
  const VecExpr py = s.phi_of(y);
  return s.phi_of(s.phi_of(lie_bracket(chart, x, y))) + lie_bracket(chart, px, py) -
         s.phi_of(lie_bracket(chart, px, y)) - s.phi_of(lie_bracket(chart, x, py));
}

}  // namespace

VecExpr nijenhuis_torsion(const ParacontactStructure& s, int i, int j) {
  return torsion_fields(s, basis_field(i), basis_field(j));
}

Expr d_eta(const ParacontactStructure& s, int i, int j) {
  return d_eta_fields(s, basis_field(i), basis_field(j));
}

VecExpr nijenhuis_n1(const ParacontactStructure& s, int i, int j) {
  if (i < 0 || j > 2 || i >= j) throw Error(ErrorCode::InvalidStructure, "nijenhuis_n1 needs 0 <= i < j <= 2");
  return nijenhuis_torsion(s, i, j) - (2.0 * d_eta(s, i, j)) * s.xi();
}

AlphaBeta alpha_beta(const Chart& chart, const Connection& conn, const MatExpr& phi, const VecExpr& xi) {
  Expr two_alpha, two_beta;
  for (int i = 0; i < 3; ++i) {
    const VecExpr nx = covariant_derivative(chart, conn, basis_field(i), xi);
    two_alpha = two_alpha + nx[static_cast<std::size_t>(i)];
    two_beta = two_beta + apply(phi, nx)[static_cast<std::size_t>(i)];
  }
  return {0.5 * two_alpha, 0.5 * two_beta};
}

double AxiomResiduals::max_residual() const {
  return std::max({eta_xi, phi_squared, phi_xi, eta_phi, compatibility, eta_metric, symmetry, trace_phi,
                   fundamental_form});
}

bool AxiomResiduals::ok(double tol) const {
  return max_residual() < tol && min_abs_det > 1e-10 && signature_ok;
}

AxiomResiduals axiom_residuals(const ParacontactStructure& s, const std::vector<Vec3>& points) {
  AxiomResiduals r;
  r.min_abs_det = std::numeric_limits<double>::infinity();
  const Mat3 id = Mat3::Identity();
  for (const Vec3& p : points) {
    const PointData d = s.at(p);
    r.eta_xi = std::max(r.eta_xi, std::fabs(d.eta.dot(d.xi) - 1.0));
    r.phi_squared = std::max(r.phi_squared, max_abs(d.phi * d.phi - (id - d.xi * d.eta.transpose())));
    r.phi_xi = std::max(r.phi_xi, max_abs(d.phi * d.xi));
    r.eta_phi = std::max(r.eta_phi, max_abs(d.phi.transpose() * d.eta));
    r.compatibility = std::max(
        r.compatibility, max_abs(d.phi.transpose() * d.g * d.phi + d.g - d.eta * d.eta.transpose()));
    r.eta_metric = std::max(r.eta_metric, max_abs(d.eta - d.g * d.xi));
    r.symmetry = std::max(r.symmetry, max_abs(d.g - d.g.transpose()));
    r.trace_phi = std::max(r.trace_phi, std::fabs(d.phi.trace()));
    const Mat3 form = d.g * d.phi;
    r.fundamental_form = std::max(r.fundamental_form, max_abs(form + form.transpose()));
    r.min_abs_det = std::min(r.min_abs_det, std::fabs(d.det_g));

    const Eigen::SelfAdjointEigenSolver<Mat3> eig(0.5 * (d.g + d.g.transpose()), Eigen::EigenvaluesOnly);
    int positive = 0, negative = 0;
    for (int i = 0; i < 3; ++i) {
      if (eig.eigenvalues()[i] > 0.0) ++positive;
      if (eig.eigenvalues()[i] < 0.0) ++negative;
    }
    if (positive != 2 || negative != 1) r.signature_ok = false;
  }
  if (points.empty()) r.min_abs_det = 0.0;
  return r;
}

NormalityResiduals normality_residuals(const ParacontactStructure& s, const std::vector<Vec3>& points) {
  const Chart& chart = s.chart();
  const Connection& conn = s.connection();
  const Expr& alpha = s.alpha();
  const Expr& beta = s.beta();

  std::vector<Expr> outputs;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const VecExpr n = nijenhuis_n1(s, i, j);
      outputs.insert(outputs.end(), n.begin(), n.end());
    }
  const std::size_t n_a = outputs.size();

  for (int a = 0; a < 3; ++a) {
    const VecExpr x = basis_field(a);
    for (int b = 0; b < 3; ++b) {
      const VecExpr y = basis_field(b);
      const VecExpr lhs = covariant_derivative(chart, conn, x, s.phi_of(y)) -
                          s.phi_of(covariant_derivative(chart, conn, x, y));
      const Expr eta_y = s.eta_of(y);
      const VecExpr rhs = beta * (s.inner(x, y) * s.xi() - eta_y * x) +
                          alpha * (s.inner(s.phi_of(x), y) * s.xi() - eta_y * s.phi_of(x));
      const VecExpr defect = lhs - rhs;
      outputs.insert(outputs.end(), defect.begin(), defect.end());
    }
  }
  const std::size_t n_b = outputs.size();

  for (int a = 0; a < 3; ++a) {
    const VecExpr x = basis_field(a);
    const VecExpr lhs = covariant_derivative(chart, conn, x, s.xi());
    const VecExpr rhs = alpha * (x - s.eta_of(x) * s.xi()) + beta * s.phi_of(x);
    const VecExpr defect = lhs - rhs;
    outputs.insert(outputs.end(), defect.begin(), defect.end());
  }

  const Tape tape(outputs, {chart.coordinates[0], chart.coordinates[1], chart.coordinates[2]});
  std::vector<double> values(outputs.size());
  NormalityResiduals r;
  for (const Vec3& p : points) {
    const double in[3] = {p[0], p[1], p[2]};
    tape.run(in, values.data());
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double v = std::fabs(values[k]);
      double& slot = k < n_a ? r.normality : (k < n_b ? r.nabla_phi : r.nabla_xi);
      // NaN must never read as a pass.
      if (!(v <= slot)) slot = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    }
  }
  return r;
}

std::string_view to_string(StructureClass c) noexcept {
  switch (c) {
    case StructureClass::Paracosymplectic: return "paracosymplectic";
    case StructureClass::QuasiParaSasakian: return "quasi-para-Sasakian";
    case StructureClass::BetaParaSasakian: return "beta-para-Sasakian";
    case StructureClass::ParaSasakian: return "para-Sasakian";
    case StructureClass::AlphaParaKenmotsu: return "alpha-para-Kenmotsu";
    case StructureClass::GenericNormal: return "generic-normal";
    case StructureClass::NonNormal: return "non-normal";
  }
  return "unknown";
}

FunctionProfile profile(const Chart& chart, const Expr& f, const std::vector<Vec3>& points,
                        double constancy_tol) {
  const auto& c = chart.coordinates;
  const Tape tape({f, differentiate(f, c[0]), differentiate(f, c[1]), differentiate(f, c[2])},
                  {c[0], c[1], c[2]});
  FunctionProfile pr;
  pr.min = std::numeric_limits<double>::infinity();
  pr.max = -std::numeric_limits<double>::infinity();
  for (const Vec3& p : points) {
    const double in[3] = {p[0], p[1], p[2]};
    double v[4];
    tape.run(in, v);
    pr.min = std::min(pr.min, v[0]);
    pr.max = std::max(pr.max, v[0]);
    pr.max_abs = std::max(pr.max_abs, std::fabs(v[0]));
    for (int k = 1; k < 4; ++k) pr.max_gradient = std::max(pr.max_gradient, std::fabs(v[k]));
  }
  if (points.empty()) pr.min = pr.max = 0.0;
  pr.zero = pr.max_abs < constancy_tol;
  pr.constant = pr.max - pr.min < constancy_tol && pr.max_gradient < constancy_tol;
  return pr;
}

Classification classify(const ParacontactStructure& s, const std::vector<Vec3>& points,
                        const ClassifyOptions& options) {
  Classification out;
  out.residuals = normality_residuals(s, points);
  out.alpha = profile(s.chart(), s.alpha(), points, options.constancy_tol);
  out.beta = profile(s.chart(), s.beta(), points, options.constancy_tol);
  if (!(out.residuals.normality < options.normality_tol)) {
    out.label = StructureClass::NonNormal;
    return out;
  }
  const FunctionProfile& a = out.alpha;
  const FunctionProfile& b = out.beta;
  if (a.zero && b.zero) {
    out.label = StructureClass::Paracosymplectic;
  } else if (a.zero && b.constant) {
    const double mean = 0.5 * (b.min + b.max);
    out.label = std::fabs(mean + 1.0) < options.constancy_tol ? StructureClass::ParaSasakian
                                                                : StructureClass::BetaParaSasakian;
  } else if (a.zero) {
    out.label = StructureClass::QuasiParaSasakian;
  } else if (a.constant && b.zero) {
    out.label = StructureClass::AlphaParaKenmotsu;
  } else {
    out.label = StructureClass::GenericNormal;
  }
  return out;
}

}  // namespace slantgeom
