#pragma once

// Moving frames along slant curves: the auxiliary F-frame, Frenet frames
// (direct covariant differentiation and the closed-form curvature/torsion),
// the Cartan frame of a null curve, and the frame of a curve with null normal.
//
// Each *Field class does the symbolic work once per curve and is then
// evaluated at individual parameter values.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "slantgeom/curve.hpp"
#include "slantgeom/error.hpp"

namespace slantgeom {

struct FrameOptions {
  /// Osculating-order and null decisions.
  double order_tol = 1e-9;
  /// Allowed |g(N,N) − 1| for the distinguished null parametrization.
  double distinguished_tol = 1e-7;
  /// Allowed ‖∇N − κN‖∞ for curves with null normal, relative to max(1, ‖∇N‖∞).
  double proportionality_tol = 1e-8;
};

struct FFrame {
  Vec3 f1, f2, f3;
  int upsilon = 0;
  /// g(F1,F1), g(F2,F2), g(F3,F3) = ε₁, υ, −ε₁υ
  std::array<int, 3> norms{};
  double orthonormality_residual = 0.0;
  /// Defects of the three derivative formulas for ∇F1, ∇F2, ∇F3.
  std::array<double, 3> equation_residuals{};
};

class FFrameField {
 public:
  /// Throws DegenerateFrame when |ε₁ − c²| is below tolerance.
  FFrameField(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options = {});
  FFrame at(double t) const;

 private:
  int epsilon1_ = 0;
  int upsilon_ = 0;
  Tape tape_;
};

FFrame f_frame(const Curve& curve, const CurveKinematics& kin, double t, const FrameOptions& options = {});

struct FrenetApparatus {
  int order = 0;
  Vec3 e1 = Vec3::Zero(), e2 = Vec3::Zero(), e3 = Vec3::Zero();
  int epsilon1 = 0, epsilon2 = 0, epsilon3 = 0;
  double kappa = 0.0;
  double tau = 0.0;
  /// ‖∇E1 − κε₂E2‖, ‖∇E2 + κε₁E1 − τε₃E3‖, ‖∇E3 + τε₂E2‖ (only the ones the order defines).
  std::array<double, 3> residuals{};
  double orthonormality_residual = 0.0;
};

/// Frenet apparatus by repeated exact covariant differentiation.
class FrenetOracle {
 public:
  /// Throws NullTangent for null curves.
  FrenetOracle(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options = {});
  /// Throws NullNormal when ∇γ̇γ̇ is a nonzero null vector.
  FrenetApparatus at(double t) const;

 private:
  int epsilon1_ = 0;
  FrameOptions options_;
  Tape first_;   // E1, ∇E1, g(∇E1,∇E1)
  Tape second_;  // E2, ∇E2, M2, g(M2,M2)
  Tape third_;   // E3, ∇E3
};

FrenetApparatus frenet_direct(const Curve& curve, const CurveKinematics& kin, double t,
                              const FrameOptions& options = {});

struct FrenetClosedForm {
  double kappa = 0.0;
  double tau = 0.0;
  /// Quantity inside |·| in the torsion formula.
  double tau_signed = 0.0;
  int epsilon2 = 0;
  int epsilon3 = 0;
  int upsilon = 0;
  double alpha = 0.0;
  double alpha_dot = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double delta_dot = 0.0;
  /// α² − ε₁δ²
  double denominator = 0.0;
};

/// Curvature and torsion of an order-3 slant Frenet curve from α, β, δ.
class FrenetClosedFormField {
 public:
  /// Throws DegenerateFrame when |ε₁ − c²| is below tolerance.
  FrenetClosedFormField(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options = {});
  /// Throws VanishingCurvatureDenominator when |α² − ε₁δ²| is below tolerance.
  FrenetClosedForm at(double t) const;

 private:
  int epsilon1_ = 0;
  int upsilon_ = 0;
  double c_ = 0.0;
  double gap_ = 0.0;
  FrameOptions options_;
  Tape tape_;
};

FrenetClosedForm frenet_closed_form(const Curve& curve, const CurveKinematics& kin, double t,
                                    const FrameOptions& options = {});

struct NullCartanApparatus {
  Vec3 t = Vec3::Zero(), n = Vec3::Zero(), w = Vec3::Zero();
  double tau = 0.0;
  /// Sign branch s = ±1 of the closed forms.
  int branch = 0;
  double tau_closed = 0.0;
  Vec3 n_closed = Vec3::Zero();
  Vec3 w_closed = Vec3::Zero();
  /// W as (−α²c² − 1)/(2c) γ̇ ∓ αφγ̇ + ξ/c², kept for comparison; it only
  /// satisfies g(T,W) = 1 when c² = 1.
  Vec3 w_printed = Vec3::Zero();
  double distinguished_residual = 0.0;
  double frame_residual = 0.0;
  /// ∇T − N, ∇W − τN, ∇N + τT + W
  std::array<double, 3> cartan_residuals{};
  double tau_residual = 0.0;
  double n_residual = 0.0;
  double w_residual = 0.0;
};

class NullCartanField {
 public:
  /// Throws NullTangent if the curve is not null, LegendreNullCurve if c ≈ 0.
  NullCartanField(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options = {});
  /// Throws GeodesicNullCurve or NotDistinguishedParametrization.
  NullCartanApparatus at(double t) const;

 private:
  double c_ = 0.0;
  FrameOptions options_;
  Tape tape_;
};

NullCartanApparatus null_cartan(const Curve& curve, const CurveKinematics& kin, double t,
                                const FrameOptions& options = {});

struct NullNormalApparatus {
  Vec3 t = Vec3::Zero(), n = Vec3::Zero(), w = Vec3::Zero();
  double kappa = 0.0;
  int branch = 0;
  Vec3 n_closed = Vec3::Zero();
  Vec3 w_closed = Vec3::Zero();
  double kappa_closed = 0.0;
  /// s·g(N, φγ̇)/(1 − c²)
  double alpha_recovered = 0.0;
  double alpha = 0.0;
  double frame_residual = 0.0;
  double proportionality_residual = 0.0;
  /// ∇N − κN, ∇W + T + κW
  std::array<double, 2> cartan_residuals{};
  double n_residual = 0.0;
  double w_residual = 0.0;
  double kappa_residual = 0.0;
  double alpha_residual = 0.0;
  /// Legendre specialization (c = 0): distance between the general closed
  /// forms and the specialized N, W, κ.
  std::optional<double> legendre_residual;
};

class NullNormalField {
 public:
  /// Throws InvalidCurve unless ε₁ = 1, DegenerateSlant if c² ≈ 1.
  NullNormalField(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options = {});
  /// Throws NormalNotNull or ProportionalityViolated.
  NullNormalApparatus at(double t) const;

 private:
  double c_ = 0.0;
  FrameOptions options_;
  Tape base_;
  std::array<Tape, 3> projected_;
};

NullNormalApparatus null_normal_frame(const Curve& curve, const CurveKinematics& kin, double t,
                                      const FrameOptions& options = {});

enum class Regime { Geodesic, FrenetOrder2, FrenetOrder3, NullCartan, NullGeodesic, NullNormal };

std::string_view to_string(Regime r) noexcept;

struct CurvePoint {
  double t = 0.0;
  std::optional<Regime> regime;
  DependenceCase dependence = DependenceCase::Independent;
  std::optional<FFrame> f_frame;
  std::optional<FrenetApparatus> frenet;
  std::optional<FrenetClosedForm> closed_form;
  std::optional<NullCartanApparatus> null_cartan;
  std::optional<NullNormalApparatus> null_normal;
  /// Set when the point could not be analysed; `error_code` says why.
  std::optional<ErrorCode> error_code;
  std::string error;
};

struct CurveAnalysis {
  std::string name;
  CurveKinematics kinematics;
  std::vector<CurvePoint> points;
};

/// Regime dispatch per parameter value: Frenet (with the closed form when
/// the order is 3), null Cartan, or null normal. Errors at individual points
/// are recorded, not thrown; kinematics errors are thrown.
CurveAnalysis analyze_curve(const Curve& curve, const std::vector<double>& ts,
                            const FrameOptions& options = {}, const KinematicsOptions& kin_options = {});

}  // namespace slantgeom
