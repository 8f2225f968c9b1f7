#pragma once

// Almost paracontact metric structures (phi, xi, eta, g) on a single
// 3-dimensional chart, their Levi-Civita connection, normality, and the
// characteristic functions alpha and beta.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slantgeom/expr.hpp"

namespace slantgeom {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Symbolic vector field: contravariant components in chart coordinates.
using VecExpr = std::array<Expr, 3>;
/// Symbolic (1,1)-tensor or bilinear form; entry [i][j] is row i, column j.
using MatExpr = std::array<std::array<Expr, 3>, 3>;

VecExpr basis_field(int i);
VecExpr operator+(const VecExpr& a, const VecExpr& b);
VecExpr operator-(const VecExpr& a, const VecExpr& b);
VecExpr operator*(const Expr& s, const VecExpr& v);
VecExpr apply(const MatExpr& m, const VecExpr& v);
Vec3 evaluate(const VecExpr& v, const Binding& binding);

/// Axis-aligned box the sampler draws from.
struct Box {
  std::array<double, 3> lo{-2.0, -2.0, -2.0};
  std::array<double, 3> hi{2.0, 2.0, 2.0};
};

struct Chart {
  std::array<std::string, 3> coordinates{"x", "y", "z"};
  /// Strict inequalities: every expression must be > 0 on the domain.
  std::vector<Expr> domain;
  /// Default sampling region; intersected with `domain` by rejection.
  Box box;

  Binding bind(const Vec3& p) const;
  bool contains(const Vec3& p) const;
};

struct SampleOptions {
  std::size_t count = 100;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  /// Overrides the chart's box when set.
  bool override_box = false;
  Box box;
};

/// Uniform rejection sampling inside the box and the domain constraints.
/// Deterministic for a given seed. Throws Error(SamplingFailed) when the
/// acceptance rate is hopeless.
std::vector<Vec3> sample_points(const Chart& chart, const SampleOptions& options);

/// Christoffel symbols of the second kind, gamma[k][i][j] = Γ^k_ij,
/// symmetric in (i, j) by construction.
struct Connection {
  std::array<MatExpr, 3> gamma;

  const Expr& operator()(int k, int i, int j) const { return gamma[k][i][j]; }
};

/// Levi-Civita connection of `g` via the symbolic adjugate inverse.
/// Throws Error(SingularMetric) when det g folds to the constant 0.
Connection christoffel(const Chart& chart, const MatExpr& g);

/// Numeric values of the structure tensors at one point.
struct PointData {
  Vec3 point;
  Mat3 g;
  Mat3 phi;
  Vec3 xi;
  Vec3 eta;
  double alpha = 0.0;
  double beta = 0.0;
  double det_g = 0.0;
};

class ParacontactStructure {
 public:
  ParacontactStructure(Chart chart, MatExpr metric, MatExpr phi, VecExpr xi, VecExpr eta);

  const Chart& chart() const noexcept { return chart_; }
  const MatExpr& metric() const noexcept { return metric_; }
  const MatExpr& phi() const noexcept { return phi_; }
  const VecExpr& xi() const noexcept { return xi_; }
  const VecExpr& eta() const noexcept { return eta_; }
  const Connection& connection() const noexcept { return connection_; }
  const Expr& alpha() const noexcept { return alpha_; }
  const Expr& beta() const noexcept { return beta_; }
  const Expr& det_metric() const noexcept { return det_; }

  Expr inner(const VecExpr& a, const VecExpr& b) const;
  Expr eta_of(const VecExpr& v) const;
  VecExpr phi_of(const VecExpr& v) const { return apply(phi_, v); }

  /// Throws Error(SingularMetric) if det g vanishes at `p`, Error(DomainViolation)
  /// for other evaluation failures.
  PointData at(const Vec3& p) const;

 private:
  Chart chart_;
  MatExpr metric_;
  MatExpr phi_;
  VecExpr xi_;
  VecExpr eta_;
  Connection connection_;
  Expr det_;
  Expr alpha_;
  Expr beta_;
  Tape tape_;
  Tape alpha_beta_tape_;
};

/// (∇_X Y)^k = X^i ∂_i Y^k + Γ^k_ij X^i Y^j.
VecExpr covariant_derivative(const Chart& chart, const Connection& conn, const VecExpr& x,
                             const VecExpr& y);

/// [X, Y]^k = X^j ∂_j Y^k − Y^j ∂_j X^k.
VecExpr lie_bracket(const Chart& chart, const VecExpr& x, const VecExpr& y);

/// Nijenhuis torsion [φ,φ](∂_i, ∂_j).
VecExpr nijenhuis_torsion(const ParacontactStructure& s, int i, int j);

/// dη(∂_i, ∂_j) with the ½ normalization: ½(X η(Y) − Y η(X) − η([X,Y])).
Expr d_eta(const ParacontactStructure& s, int i, int j);

/// N⁽¹⁾(∂_i, ∂_j) = [φ,φ](∂_i, ∂_j) − 2 dη(∂_i, ∂_j) ξ.
VecExpr nijenhuis_n1(const ParacontactStructure& s, int i, int j);

struct AlphaBeta {
  Expr alpha;
  Expr beta;
};

/// 2α = tr(X ↦ ∇_X ξ), 2β = tr(X ↦ φ ∇_X ξ).
AlphaBeta alpha_beta(const Chart& chart, const Connection& conn, const MatExpr& phi, const VecExpr& xi);

struct AxiomResiduals {
  double eta_xi = 0.0;          // |η(ξ) − 1|
  double phi_squared = 0.0;     // φ² − (Id − η⊗ξ)
  double phi_xi = 0.0;          // φξ
  double eta_phi = 0.0;         // η∘φ
  double compatibility = 0.0;   // g(φX,φY) + g(X,Y) − η(X)η(Y)
  double eta_metric = 0.0;      // η − g(·, ξ)
  double symmetry = 0.0;        // g_ij − g_ji
  double trace_phi = 0.0;       // |tr φ|; zero iff the ±1 eigenspaces on ker η are equidimensional
  double fundamental_form = 0.0;  // Φ(X,Y) + Φ(Y,X)
  double min_abs_det = 0.0;
  bool signature_ok = true;     // two positive, one negative eigenvalue everywhere

  double max_residual() const;
  bool ok(double tol) const;
};

AxiomResiduals axiom_residuals(const ParacontactStructure& s, const std::vector<Vec3>& points);

struct NormalityResiduals {
  double normality = 0.0;  // max |N⁽¹⁾| over basis pairs
  double nabla_phi = 0.0;  // (∇_X φ)Y defect against the α, β form
  double nabla_xi = 0.0;   // ∇_X ξ defect against α(X − η(X)ξ) + βφX
};

NormalityResiduals normality_residuals(const ParacontactStructure& s, const std::vector<Vec3>& points);

enum class StructureClass {
  Paracosymplectic,
  QuasiParaSasakian,
  BetaParaSasakian,
  ParaSasakian,
  AlphaParaKenmotsu,
  GenericNormal,
  NonNormal,
};

std::string_view to_string(StructureClass c) noexcept;

/// Sampled behaviour of a scalar function.
struct FunctionProfile {
  double min = 0.0;
  double max = 0.0;
  double max_abs = 0.0;
  double max_gradient = 0.0;
  bool zero = false;
  bool constant = false;
};

struct Classification {
  StructureClass label = StructureClass::NonNormal;
  NormalityResiduals residuals;
  FunctionProfile alpha;
  FunctionProfile beta;
};

struct ClassifyOptions {
  double normality_tol = 1e-9;
  double constancy_tol = 1e-8;
};

FunctionProfile profile(const Chart& chart, const Expr& f, const std::vector<Vec3>& points,
                        double constancy_tol);

Classification classify(const ParacontactStructure& s, const std::vector<Vec3>& points,
                        const ClassifyOptions& options = {});

}  // namespace slantgeom
