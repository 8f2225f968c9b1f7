#pragma once

// Numeric reference geometry for the tests. Everything here works on plain
// C++ lambdas and central finite differences, so it shares no code with the
// symbolic pipeline it checks.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <random>

namespace oracle {

using V = Eigen::Vector3d;
using M = Eigen::Matrix3d;
using MetricFn = std::function<M(const V&)>;
using CurveFn = std::function<V(double)>;

/// Γ[k](i, j) from central differences of g (step h).
inline std::array<M, 3> christoffel(const MetricFn& g, const V& p, double h = 1e-5) {
  std::array<M, 3> dg;  // dg[l](i,j) = ∂_l g_ij
  for (int l = 0; l < 3; ++l) {
    V e = V::Zero();
    e[l] = h;
    dg[l] = (g(p + e) - g(p - e)) / (2 * h);
  }
  const M inv = g(p).inverse();
  std::array<M, 3> gamma;
  for (int k = 0; k < 3; ++k) {
    gamma[k].setZero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          gamma[k](i, j) += 0.5 * inv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
  }
  return gamma;
}

inline V derivative(const CurveFn& f, double t, double h = 1e-5) {
  return (f(t + h) - f(t - h)) / (2 * h);
}

inline double derivative(const std::function<double(double)>& f, double t, double h = 1e-5) {
  return (f(t + h) - f(t - h)) / (2 * h);
}

/// ∇_γ̇ V along γ for a field V(t), all by finite differences.
inline V covariant(const MetricFn& g, const CurveFn& gamma, const CurveFn& field, double t, double h = 1e-4) {
  const V p = gamma(t);
  const V v = derivative(gamma, t, h);
  const auto G = christoffel(g, p);
  V out = derivative(field, t, h);
  for (int k = 0; k < 3; ++k) out[k] += v.dot(G[k] * field(t));
  return out;
}

/// Magnitude of curvature of a unit-speed non-null curve:
/// κ = sqrt|g(∇γ̇γ̇, ∇γ̇γ̇)|.
inline double frenet_kappa(const MetricFn& g, const CurveFn& gamma, double t) {
  const CurveFn vel = [&](double s) { return derivative(gamma, s, 1e-5); };
  const V a = covariant(g, gamma, vel, t, 1e-4);
  return std::sqrt(std::fabs(a.dot(g(gamma(t)) * a)));
}

/// Deterministic uniform doubles for hand-rolled property generators.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
