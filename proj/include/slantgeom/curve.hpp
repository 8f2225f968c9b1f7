#pragma once

// Parametrized curves on a paracontact chart. Every field along the curve
// (metric, φ, ξ, η, Γ, α, β) is kept symbolic in the parameter so that
// covariant derivatives along γ are exact.

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "slantgeom/structure.hpp"

namespace slantgeom {

/// Open parameter interval; endpoints may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const noexcept { return lo < t && t < hi; }
};

class Curve {
 public:
  Curve(std::shared_ptr<const ParacontactStructure> structure, VecExpr components, Interval interval,
        std::string parameter = "t", std::string name = {});

  const ParacontactStructure& structure() const noexcept { return *structure_; }
  const std::shared_ptr<const ParacontactStructure>& structure_ptr() const noexcept { return structure_; }
  const VecExpr& components() const noexcept { return components_; }
  const Interval& interval() const noexcept { return interval_; }
  const std::string& parameter() const noexcept { return parameter_; }
  const std::string& name() const noexcept { return name_; }

  /// γ̇
  const VecExpr& velocity() const noexcept { return velocity_; }
  /// ∇_γ̇ γ̇
  const VecExpr& acceleration() const noexcept { return acceleration_; }
  /// Structure fields composed with γ.
  const MatExpr& metric() const noexcept { return metric_; }
  const MatExpr& phi() const noexcept { return phi_; }
  const VecExpr& xi() const noexcept { return xi_; }
  const VecExpr& eta() const noexcept { return eta_; }
  const Expr& alpha() const noexcept { return alpha_; }
  const Expr& beta() const noexcept { return beta_; }

  /// f∘γ for a function of the chart coordinates.
  Expr compose(const Expr& f) const;

  Expr inner(const VecExpr& a, const VecExpr& b) const;
  Expr eta_of(const VecExpr& v) const;
  VecExpr phi_of(const VecExpr& v) const { return apply(phi_, v); }
  /// d/dt of a scalar along γ.
  Expr dot(const Expr& f) const { return differentiate(f, parameter_); }
  /// (∇_γ̇ V)^k = V̇^k + Γ^k_ij(γ) γ̇^i V^j for V given by components in t.
  VecExpr covariant_along(const VecExpr& v) const;

  Binding bind(double t) const { return Binding{{parameter_, t}}; }
  double value(const Expr& f, double t) const { return evaluate(f, bind(t)); }
  Vec3 value(const VecExpr& v, double t) const { return evaluate(v, bind(t)); }
  Vec3 point(double t) const { return value(components_, t); }

  /// `n` parameters drawn uniformly from the interval shrunk by 5% on each
  /// side (infinite ends are replaced by a window of width 4 next to the
  /// finite end, or [-2, 2]).
  std::vector<double> sample_parameters(std::size_t n, std::uint64_t seed = 42) const;
  /// `n` evenly spaced parameters from the same shrunk interval.
  std::vector<double> grid_parameters(std::size_t n) const;

  /// Throws Error(InvalidCurve) if some t lies outside the interval or γ(t)
  /// leaves the chart domain.
  void check_domain(const std::vector<double>& ts) const;

 private:
  std::shared_ptr<const ParacontactStructure> structure_;
  VecExpr components_;
  Interval interval_;
  std::string parameter_;
  std::string name_;
  std::map<std::string, Expr, std::less<>> along_;

  VecExpr velocity_;
  MatExpr metric_;
  MatExpr phi_;
  VecExpr xi_;
  VecExpr eta_;
  std::array<MatExpr, 3> gamma_;
  Expr alpha_;
  Expr beta_;
  VecExpr acceleration_;
};

enum class CausalCharacter { Spacelike, Timelike, Null };

std::string_view to_string(CausalCharacter c) noexcept;

struct KinematicsOptions {
  double causal_tol = 1e-9;
  double slant_tol = 1e-9;
};

struct CurveKinematics {
  CausalCharacter causal = CausalCharacter::Null;
  /// +1, -1, or 0 for null curves.
  int epsilon1 = 0;
  /// Slant constant η(γ̇).
  double c = 0.0;
  /// ε₁ − c²
  double gap = 0.0;
  /// δ = g(∇γ̇γ̇, φγ̇)/|ε₁ − c²|; only meaningful when has_delta.
  Expr delta;
  bool has_delta = false;
  Expr alpha;
  Expr beta;
  double speed_residual = 0.0;
  double slant_residual = 0.0;
};

/// Causal character, slant constant and δ along γ, checked at `ts`.
/// Throws NotConstantSpeed or NotSlant.
CurveKinematics kinematics(const Curve& curve, const std::vector<double>& ts,
                           const KinematicsOptions& options = {});

Vec3 covariant_accel(const Curve& curve, double t);

struct GeodesicCheck {
  bool geodesic = false;
  double residual = 0.0;
};

GeodesicCheck is_geodesic(const Curve& curve, const std::vector<double>& ts, double tol = 1e-9);

enum class DependenceCase { Independent, TangentCollinearXi, TangentXiPlusPhi, TangentXiMinusPhi };

std::string_view to_string(DependenceCase d) noexcept;

/// Which alternative of the γ̇, φγ̇, ξ dependence dichotomy holds at t.
DependenceCase dependence_case(const Curve& curve, double c, double t, double tol = 1e-9);

/// Slant curve (x(t), y(t), z(t)) with z solving η(γ̇) = c exactly. Needs
/// η = η₁(x,y) dx + η₂(x,y) dy + dz with η₁, η₂ polynomial along (x, y), and
/// polynomial x, y. Throws NonPolynomialInput or InvalidStructure.
Curve generate_slant(std::shared_ptr<const ParacontactStructure> structure, const Expr& x, const Expr& y,
                     double c, double z0, Interval interval = {}, std::string parameter = "t",
                     std::string name = {});

}  // namespace slantgeom
