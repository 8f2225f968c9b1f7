#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "slantgeom/expr.hpp"

namespace slantgeom {

/// Dense univariate polynomial, coefficient i multiplies t^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial identity() { return Polynomial({0.0, 1.0}); }

  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  double operator()(double t) const;
  Polynomial derivative() const;
  /// Antiderivative with the given value at t = 0.
  Polynomial antiderivative(double constant_term = 0.0) const;
  Polynomial pow(std::size_t n) const;

  /// Expression in the named variable, Horner-free monomial sum.
  Expr to_expr(std::string_view var) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Exact conversion of an expression that is a polynomial in `var` (sums,
/// differences, products, non-negative integer powers, division by nonzero
/// constants). Returns nullopt for anything else, including other free
/// variables.
std::optional<Polynomial> as_polynomial(const Expr& e, std::string_view var);

}  // namespace slantgeom
