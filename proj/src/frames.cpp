#include "slantgeom/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slantgeom {

namespace {

int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

double norm_inf(const Vec3& v) {
  const double m = v.cwiseAbs().maxCoeff();
  return std::isnan(m) ? std::numeric_limits<double>::infinity() : m;
}

// Collects tape outputs and remembers where each block starts.
class Outputs {
 public:
  std::size_t add(const Expr& e) {
    exprs_.push_back(e);
    return exprs_.size() - 1;
  }
  std::size_t add(const VecExpr& v) {
    const std::size_t at = exprs_.size();
    exprs_.insert(exprs_.end(), v.begin(), v.end());
    return at;
  }
  std::size_t add(const MatExpr& m) {
    const std::size_t at = exprs_.size();
    for (const auto& row : m) exprs_.insert(exprs_.end(), row.begin(), row.end());
    return at;
  }
  Tape tape(const Curve& curve) const { return Tape(exprs_, {curve.parameter()}); }

 private:
  std::vector<Expr> exprs_;
};

struct Values {
  std::vector<double> v;

  double s(std::size_t i) const { return v[i]; }
  Vec3 vec(std::size_t i) const { return {v[i], v[i + 1], v[i + 2]}; }
  Mat3 mat(std::size_t i) const {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = v[i + static_cast<std::size_t>(3 * r + c)];
    return m;
  }
};

Values run(const Tape& tape, double t) { return Values{tape({t})}; }

// Offsets of the blocks every tape starts with.
constexpr std::size_t kMetric = 0;

std::string at_t(const Curve& curve, double t) {
  return "curve '" + curve.name() + "' at " + curve.parameter() + "=" + std::to_string(t);
}

double ip(const Mat3& g, const Vec3& a, const Vec3& b) { return a.dot(g * b); }

}  // namespace

// ---------------------------------------------------------------- F-frame

namespace {
// metric, F1, F2, F3, then the defects of ∇F1, ∇F2, ∇F3
constexpr std::size_t kF1 = 9, kF2 = 12, kF3 = 15, kD1 = 18, kD2 = 21, kD3 = 24;
}  // namespace

FFrameField::FFrameField(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options)
    : epsilon1_(kin.epsilon1) {
  if (kin.epsilon1 == 0) throw Error(ErrorCode::NullTangent, "F-frame needs a non-null tangent");
  if (!kin.has_delta || std::fabs(kin.gap) <= options.order_tol) {
    throw Error(ErrorCode::DegenerateFrame, "F-frame needs ε₁ − c² ≠ 0 (got " + std::to_string(kin.gap) + ")");
  }
  upsilon_ = sgn(-kin.gap);
  const double root = std::sqrt(std::fabs(kin.gap));
  const double e1 = epsilon1_;
  const double u = upsilon_;
  const double c = kin.c;
  const Expr& a = kin.alpha;
  const Expr& b = kin.beta;
  const Expr& d = kin.delta;

  const VecExpr f1 = curve.velocity();
  const VecExpr f2 = Expr(1.0 / root) * curve.phi_of(f1);
  const VecExpr f3 = Expr(1.0 / root) * (curve.xi() - Expr(e1 * c) * f1);

  const VecExpr d1 = curve.covariant_along(f1) - ((u * root) * d * f2 - (e1 * root) * a * f3);
  const VecExpr d2 = curve.covariant_along(f2) - (-(e1 * root) * d * f1 + (e1 * b - (u * c) * d) * f3);
  const VecExpr d3 = curve.covariant_along(f3) - (-(e1 * u * root) * a * f1 + (b - (e1 * u * c) * d) * f2);

  Outputs out;
  out.add(curve.metric());
  for (const VecExpr* block : {&f1, &f2, &f3, &d1, &d2, &d3}) out.add(*block);
  tape_ = out.tape(curve);
}

FFrame FFrameField::at(double t) const {
  const Values v = run(tape_, t);
  const Mat3 g = v.mat(kMetric);
  FFrame f;
  f.f1 = v.vec(kF1);
  f.f2 = v.vec(kF2);
  f.f3 = v.vec(kF3);
  f.upsilon = upsilon_;
  f.norms = {epsilon1_, upsilon_, -epsilon1_ * upsilon_};
  const std::array<Vec3, 3> fs{f.f1, f.f2, f.f3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double expected = i == j ? f.norms[static_cast<std::size_t>(i)] : 0.0;
      f.orthonormality_residual = std::max(f.orthonormality_residual, std::fabs(ip(g, fs[i], fs[j]) - expected));
    }
  f.equation_residuals = {norm_inf(v.vec(kD1)), norm_inf(v.vec(kD2)), norm_inf(v.vec(kD3))};
  return f;
}

FFrame f_frame(const Curve& curve, const CurveKinematics& kin, double t, const FrameOptions& options) {
  return FFrameField(curve, kin, options).at(t);
}

// ---------------------------------------------------------------- Frenet, direct

namespace {
// first_: metric, E1, ∇E1, q
constexpr std::size_t kE1 = 9, kN1 = 12, kQ = 15;
// second_: E2, ∇E2, M2, r
constexpr std::size_t kE2 = 0, kDE2 = 3, kM2 = 6, kR = 9;
// third_: E3, ∇E3
constexpr std::size_t kE3 = 0, kDE3 = 3;
}  // namespace

FrenetOracle::FrenetOracle(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options)
    : epsilon1_(kin.epsilon1), options_(options) {
  if (kin.epsilon1 == 0) throw Error(ErrorCode::NullTangent, "null tangent: use the null Cartan frame");
  const VecExpr& e1 = curve.velocity();
  const VecExpr& n1 = curve.acceleration();
  const Expr q = curve.inner(n1, n1);
  Outputs o1;
  o1.add(curve.metric());
  o1.add(e1);
  o1.add(n1);
  o1.add(q);
  first_ = o1.tape(curve);

  const Expr kappa = sqrt(abs(q));
  const VecExpr e2 = (1.0 / (signum(q) * kappa)) * n1;
  const VecExpr de2 = curve.covariant_along(e2);
  const VecExpr m2 = de2 + (static_cast<double>(epsilon1_) * kappa) * e1;
  const Expr r = curve.inner(m2, m2);
  Outputs o2;
  o2.add(e2);
  o2.add(de2);
  o2.add(m2);
  o2.add(r);
  second_ = o2.tape(curve);

  const VecExpr e3 = (1.0 / (signum(r) * sqrt(abs(r)))) * m2;
  Outputs o3;
  o3.add(e3);
  o3.add(curve.covariant_along(e3));
  third_ = o3.tape(curve);
}

FrenetApparatus FrenetOracle::at(double t) const {
  const double tol = options_.order_tol;
  const Values v1 = run(first_, t);
  const Mat3 g = v1.mat(kMetric);
  FrenetApparatus f;
  f.epsilon1 = epsilon1_;
  f.e1 = v1.vec(kE1);
  const Vec3 n1 = v1.vec(kN1);
  const double q = v1.s(kQ);
  if (norm_inf(n1) < tol) {
    f.order = 1;
    f.residuals[0] = norm_inf(n1);
    f.orthonormality_residual = std::fabs(ip(g, f.e1, f.e1) - epsilon1_);
    return f;
  }
  if (std::fabs(q) < tol) {
    throw Error(ErrorCode::NullNormal, "acceleration is a nonzero null vector: use the null-normal frame");
  }
  f.epsilon2 = sgn(q);
  f.kappa = std::sqrt(std::fabs(q));
  const Values v2 = run(second_, t);
  f.e2 = v2.vec(kE2);
  const Vec3 de2 = v2.vec(kDE2);
  const Vec3 m2 = v2.vec(kM2);
  const double r = v2.s(kR);
  f.residuals[0] = norm_inf(n1 - f.kappa * f.epsilon2 * f.e2);

  auto ortho = [&](const std::vector<std::pair<Vec3, int>>& frame) {
    double res = 0.0;
    for (std::size_t i = 0; i < frame.size(); ++i)
      for (std::size_t j = 0; j < frame.size(); ++j) {
        const double expected = i == j ? frame[i].second : 0.0;
        res = std::max(res, std::fabs(ip(g, frame[i].first, frame[j].first) - expected));
      }
    return res;
  };

  if (norm_inf(m2) < tol) {
    f.order = 2;
    f.residuals[1] = norm_inf(de2 + f.kappa * epsilon1_ * f.e1);
    f.orthonormality_residual = ortho({{f.e1, epsilon1_}, {f.e2, f.epsilon2}});
    return f;
  }
  if (std::fabs(r) < tol) {
    throw Error(ErrorCode::DegenerateFrame, "∇E2 + κε₁E1 is a nonzero null vector; no Frenet binormal");
  }
  f.order = 3;
  f.epsilon3 = sgn(r);
  f.tau = std::sqrt(std::fabs(r));
  const Values v3 = run(third_, t);
  f.e3 = v3.vec(kE3);
  const Vec3 de3 = v3.vec(kDE3);
  f.residuals[1] = norm_inf(de2 + f.kappa * epsilon1_ * f.e1 - f.tau * f.epsilon3 * f.e3);
  f.residuals[2] = norm_inf(de3 + f.tau * f.epsilon2 * f.e2);
  f.orthonormality_residual = ortho({{f.e1, epsilon1_}, {f.e2, f.epsilon2}, {f.e3, f.epsilon3}});
  return f;
}

FrenetApparatus frenet_direct(const Curve& curve, const CurveKinematics& kin, double t,
                              const FrameOptions& options) {
  return FrenetOracle(curve, kin, options).at(t);
}

// ---------------------------------------------------------------- Frenet, closed form

namespace {
constexpr std::size_t kA = 0, kAd = 1, kB = 2, kD = 3, kDd = 4;
}  // namespace

FrenetClosedFormField::FrenetClosedFormField(const Curve& curve, const CurveKinematics& kin,
                                             const FrameOptions& options)
    : epsilon1_(kin.epsilon1), c_(kin.c), gap_(kin.gap), options_(options) {
  if (kin.epsilon1 == 0) throw Error(ErrorCode::NullTangent, "closed-form Frenet data needs a non-null tangent");
  if (!kin.has_delta || std::fabs(kin.gap) <= options.order_tol) {
    throw Error(ErrorCode::DegenerateFrame, "closed form needs ε₁ − c² ≠ 0 (got " + std::to_string(kin.gap) + ")");
  }
  upsilon_ = sgn(-kin.gap);
  Outputs o;
  o.add(kin.alpha);
  o.add(curve.dot(kin.alpha));
  o.add(kin.beta);
  o.add(kin.delta);
  o.add(curve.dot(kin.delta));
  tape_ = o.tape(curve);
}

FrenetClosedForm FrenetClosedFormField::at(double t) const {
  const Values v = run(tape_, t);
  FrenetClosedForm f;
  f.alpha = v.s(kA);
  f.alpha_dot = v.s(kAd);
  f.beta = v.s(kB);
  f.delta = v.s(kD);
  f.delta_dot = v.s(kDd);
  f.upsilon = upsilon_;
  const double e1 = epsilon1_;
  f.denominator = f.alpha * f.alpha - e1 * f.delta * f.delta;
  if (!(std::fabs(f.denominator) >= options_.order_tol)) {
    throw Error(ErrorCode::VanishingCurvatureDenominator,
                "α² − ε₁δ² = " + std::to_string(f.denominator) + " at t=" + std::to_string(t));
  }
  f.kappa = std::sqrt(std::fabs(gap_) * std::fabs(f.denominator));
  f.tau_signed = sgn(1.0 - e1 * c_ * c_) * f.beta + c_ * f.delta +
                 (f.alpha * f.delta_dot - f.alpha_dot * f.delta) / f.denominator;
  f.tau = std::fabs(f.tau_signed);
  f.epsilon2 = sgn(-e1 * upsilon_ * f.denominator);
  f.epsilon3 = -epsilon1_ * f.epsilon2;
  return f;
}

FrenetClosedForm frenet_closed_form(const Curve& curve, const CurveKinematics& kin, double t,
                                    const FrameOptions& options) {
  return FrenetClosedFormField(curve, kin, options).at(t);
}

// ---------------------------------------------------------------- null Cartan

namespace {
// metric, T, N, ∇N, W, ∇W, τ, α, α̇, β, φT, ξ
constexpr std::size_t kCT = 9, kCN = 12, kCDN = 15, kCW = 18, kCDW = 21, kCTau = 24, kCA = 25, kCAd = 26,
                      kCB = 27, kCPT = 28, kCXi = 31;
}  // namespace

NullCartanField::NullCartanField(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options)
    : c_(kin.c), options_(options) {
  if (kin.epsilon1 != 0) throw Error(ErrorCode::InvalidCurve, "the Cartan frame is for null curves");
  if (std::fabs(kin.c) < options.order_tol) {
    throw Error(ErrorCode::LegendreNullCurve, "null Legendre curves are geodesics up to parametrization");
  }
  const VecExpr& tv = curve.velocity();
  const VecExpr& n = curve.acceleration();
  const VecExpr dn = curve.covariant_along(n);
  const Expr tau = 0.5 * curve.inner(dn, dn);
  const VecExpr w = Expr(-1.0) * dn - tau * tv;
  Outputs o;
  o.add(curve.metric());
  o.add(tv);
  o.add(n);
  o.add(dn);
  o.add(w);
  o.add(curve.covariant_along(w));
  o.add(tau);
  o.add(curve.alpha());
  o.add(curve.dot(curve.alpha()));
  o.add(curve.beta());
  o.add(curve.phi_of(tv));
  o.add(curve.xi());
  tape_ = o.tape(curve);
}

NullCartanApparatus NullCartanField::at(double t) const {
  const Values v = run(tape_, t);
  const Mat3 g = v.mat(kMetric);
  NullCartanApparatus r;
  r.t = v.vec(kCT);
  r.n = v.vec(kCN);
  r.w = v.vec(kCW);
  r.tau = v.s(kCTau);
  const Vec3 dn = v.vec(kCDN);
  const Vec3 dw = v.vec(kCDW);
  if (norm_inf(r.n) < options_.order_tol) throw Error(ErrorCode::GeodesicNullCurve, "∇γ̇γ̇ = 0");
  const double nn = ip(g, r.n, r.n);
  r.distinguished_residual = std::fabs(nn - 1.0);
  if (!(r.distinguished_residual <= options_.distinguished_tol)) {
    throw Error(ErrorCode::NotDistinguishedParametrization,
                "g(∇γ̇γ̇, ∇γ̇γ̇) = " + std::to_string(nn) + ", expected 1");
  }
  r.frame_residual = std::max({std::fabs(ip(g, r.t, r.w) - 1.0), r.distinguished_residual,
                               std::fabs(ip(g, r.t, r.t)), std::fabs(ip(g, r.t, r.n)), std::fabs(ip(g, r.w, r.w)),
                               std::fabs(ip(g, r.w, r.n))});
  // ∇T = N holds by construction of N; recorded for completeness.
  r.cartan_residuals = {0.0, norm_inf(dw - r.tau * r.n), norm_inf(dn + r.tau * r.t + r.w)};

  const double a = v.s(kCA), ad = v.s(kCAd), b = v.s(kCB), c = c_;
  const Vec3 pt = v.vec(kCPT), xi = v.vec(kCXi);
  double best = std::numeric_limits<double>::infinity();
  for (int s : {1, -1}) {
    const Vec3 nc = a * c * r.t + (s / c) * pt;
    const double res = norm_inf(nc - r.n);
    if (res < best) {
      best = res;
      r.branch = s;
      r.n_closed = nc;
    }
  }
  const double s = r.branch;
  r.tau_closed = -a * a * c * c / 2.0 - ad * c + s * b - 1.0 / (2.0 * c * c);
  r.w_closed = -(a * a * c * c / 2.0 + 1.0 / (2.0 * c * c)) * r.t - s * a * pt + xi / c;
  r.w_printed = ((-a * a * c * c - 1.0) / (2.0 * c)) * r.t - s * a * pt + xi / (c * c);
  r.n_residual = best;
  r.tau_residual = std::fabs(r.tau_closed - r.tau);
  r.w_residual = norm_inf(r.w_closed - r.w);
  return r;
}

NullCartanApparatus null_cartan(const Curve& curve, const CurveKinematics& kin, double t,
                                const FrameOptions& options) {
  return NullCartanField(curve, kin, options).at(t);
}

// ---------------------------------------------------------------- null normal

namespace {
// base_: metric, T, N, ∇N, α, α̇, β, φT, ξ, then g(N,U_k) and g(∇N,U_k) for k = 0, 1, 2
constexpr std::size_t kNT = 9, kNN = 12, kNDN = 15, kNA = 18, kNAd = 19, kNB = 20, kNPT = 21, kNXi = 24,
                      kNU = 27;
// projected_[k]: W_k, ∇W_k
constexpr std::size_t kNW = 0, kNDW = 3;
}  // namespace

NullNormalField::NullNormalField(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options)
    : c_(kin.c), options_(options) {
  if (kin.epsilon1 != 1) throw Error(ErrorCode::InvalidCurve, "null-normal frame needs g(γ̇,γ̇) = 1");
  if (std::fabs(1.0 - kin.c * kin.c) < options.order_tol) {
    throw Error(ErrorCode::DegenerateSlant, "null-normal closed forms need c² ≠ 1");
  }
  const VecExpr& tv = curve.velocity();
  const VecExpr& n = curve.acceleration();
  const VecExpr dn = curve.covariant_along(n);
  Outputs base;
  base.add(curve.metric());
  base.add(tv);
  base.add(n);
  base.add(dn);
  base.add(curve.alpha());
  base.add(curve.dot(curve.alpha()));
  base.add(curve.beta());
  base.add(curve.phi_of(tv));
  base.add(curve.xi());
  // W from a coordinate vector projected onto T^⊥: with U ⊥ T and
  // a = g(N,U) ≠ 0, W = U/a − g(U,U)/(2a²) N is the null partner of N.
  for (std::size_t k = 0; k < 3; ++k) {
    const VecExpr ek = basis_field(static_cast<int>(k));
    const VecExpr u = ek - curve.inner(ek, tv) * tv;
    const Expr a = curve.inner(n, u);
    base.add(a);
    base.add(curve.inner(dn, u));
    const VecExpr w = (1.0 / a) * u - (curve.inner(u, u) / (2.0 * pow(a, 2))) * n;
    Outputs proj;
    proj.add(w);
    proj.add(curve.covariant_along(w));
    projected_[k] = proj.tape(curve);
  }
  base_ = base.tape(curve);
}

NullNormalApparatus NullNormalField::at(double t) const {
  const double tol = options_.order_tol;
  const Values v = run(base_, t);
  const Mat3 g = v.mat(kMetric);
  NullNormalApparatus r;
  r.t = v.vec(kNT);
  r.n = v.vec(kNN);
  const Vec3 dn = v.vec(kNDN);
  if (norm_inf(r.n) < tol) throw Error(ErrorCode::NormalNotNull, "∇γ̇γ̇ = 0 (geodesic)");
  const double nn = ip(g, r.n, r.n);
  if (!(std::fabs(nn) < tol)) {
    throw Error(ErrorCode::NormalNotNull, "g(∇γ̇γ̇, ∇γ̇γ̇) = " + std::to_string(nn));
  }

  std::size_t k = 0;
  for (std::size_t j = 1; j < 3; ++j)
    if (std::fabs(v.s(kNU + 2 * j)) > std::fabs(v.s(kNU + 2 * k))) k = j;
  r.kappa = v.s(kNU + 2 * k + 1) / v.s(kNU + 2 * k);
  r.proportionality_residual = norm_inf(dn - r.kappa * r.n);
  if (!(r.proportionality_residual <= options_.proportionality_tol * std::max(1.0, norm_inf(dn)))) {
    throw Error(ErrorCode::ProportionalityViolated,
                "∇N is not parallel to N (residual " + std::to_string(r.proportionality_residual) + ")");
  }
  const Values pw = run(projected_[k], t);
  r.w = pw.vec(kNW);
  const Vec3 dw = pw.vec(kNDW);
  r.frame_residual = std::max({std::fabs(ip(g, r.t, r.t) - 1.0), std::fabs(ip(g, r.n, r.w) - 1.0), std::fabs(nn),
                               std::fabs(ip(g, r.w, r.w)), std::fabs(ip(g, r.t, r.n)), std::fabs(ip(g, r.t, r.w))});
  r.cartan_residuals = {r.proportionality_residual, norm_inf(dw + r.t + r.kappa * r.w)};

  const double a = v.s(kNA), ad = v.s(kNAd), b = v.s(kNB), c = c_;
  const Vec3 pt = v.vec(kNPT), xi = v.vec(kNXi);
  r.alpha = a;
  double best = std::numeric_limits<double>::infinity();
  for (int s : {1, -1}) {
    const Vec3 nc = -a * (xi - c * r.t + s * pt);
    const double res = norm_inf(nc - r.n);
    if (res < best) {
      best = res;
      r.branch = s;
      r.n_closed = nc;
    }
  }
  const double s = r.branch;
  r.n_residual = best;
  r.kappa_closed = ad / a + s * b + a * c;
  r.w_closed = (-1.0 / (2.0 * a * (1.0 - c * c))) * (xi - c * r.t - s * pt);
  r.alpha_recovered = s * ip(g, r.n, pt) / (1.0 - c * c);
  r.kappa_residual = std::fabs(r.kappa_closed - r.kappa);
  r.w_residual = norm_inf(r.w_closed - r.w);
  r.alpha_residual = std::fabs(r.alpha_recovered - a);
  if (std::fabs(c) < tol) {
    const Vec3 n5 = -a * (xi + s * pt);
    const Vec3 w5 = (-1.0 / (2.0 * a)) * (xi - s * pt);
    const double k5 = ad / a + s * b;
    r.legendre_residual =
        std::max({norm_inf(n5 - r.n_closed), norm_inf(w5 - r.w_closed), std::fabs(k5 - r.kappa_closed)});
  }
  return r;
}

NullNormalApparatus null_normal_frame(const Curve& curve, const CurveKinematics& kin, double t,
                                      const FrameOptions& options) {
  return NullNormalField(curve, kin, options).at(t);
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Geodesic: return "geodesic";
    case Regime::FrenetOrder2: return "frenet-order-2";
    case Regime::FrenetOrder3: return "frenet-order-3";
    case Regime::NullCartan: return "null-cartan";
    case Regime::NullGeodesic: return "null-geodesic";
    case Regime::NullNormal: return "null-normal";
  }
  return "unknown";
}

namespace {

// Builds a frame field on first use and remembers a construction failure.
template <typename Field>
class Lazy {
 public:
  const Field& get(const Curve& curve, const CurveKinematics& kin, const FrameOptions& options) {
    if (failure_) throw *failure_;
    if (!field_) {
      try {
        field_.emplace(curve, kin, options);
      } catch (const Error& e) {
        failure_ = e;
        throw;
      }
    }
    return *field_;
  }

 private:
  std::optional<Field> field_;
  std::optional<Error> failure_;
};

}  // namespace

CurveAnalysis analyze_curve(const Curve& curve, const std::vector<double>& ts, const FrameOptions& options,
                            const KinematicsOptions& kin_options) {
  CurveAnalysis out;
  out.name = curve.name();
  out.kinematics = kinematics(curve, ts, kin_options);
  const CurveKinematics& kin = out.kinematics;

  Lazy<FFrameField> fframe;
  Lazy<FrenetOracle> frenet;
  Lazy<FrenetClosedFormField> closed;
  Lazy<NullCartanField> cartan;
  Lazy<NullNormalField> null_normal;

  for (double t : ts) {
    CurvePoint p;
    p.t = t;
    try {
      if (kin.epsilon1 == 0) {
        if (norm_inf(covariant_accel(curve, t)) < options.order_tol) {
          p.regime = Regime::NullGeodesic;
        } else {
          p.null_cartan = cartan.get(curve, kin, options).at(t);
          p.regime = Regime::NullCartan;
        }
      } else {
        p.dependence = dependence_case(curve, kin.c, t, options.order_tol);
        if (kin.has_delta) p.f_frame = fframe.get(curve, kin, options).at(t);
        try {
          p.frenet = frenet.get(curve, kin, options).at(t);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NullNormal) throw;
          p.regime = Regime::NullNormal;
          p.null_normal = null_normal.get(curve, kin, options).at(t);
        }
        if (p.frenet) {
          p.regime = p.frenet->order == 1 ? Regime::Geodesic
                                          : (p.frenet->order == 2 ? Regime::FrenetOrder2 : Regime::FrenetOrder3);
          if (p.frenet->order == 3) p.closed_form = closed.get(curve, kin, options).at(t);
        }
      }
    } catch (const Error& e) {
      p.error_code = e.code();
      p.error = at_t(curve, t) + ": " + e.what();
    }
    out.points.push_back(std::move(p));
  }
  return out;
}

}  // namespace slantgeom
