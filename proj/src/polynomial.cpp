#include "slantgeom/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace slantgeom {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative(double constant_term) const {
  std::vector<double> a(coeffs_.size() + 1);
  a[0] = constant_term;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::pow(std::size_t n) const {
  Polynomial out = constant(1.0);
  for (std::size_t i = 0; i < n; ++i) out = out * *this;
  return out;
}

Expr Polynomial::to_expr(std::string_view var) const {
  const Expr t = Expr::variable(var);
  Expr out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0.0) continue;
    const Expr mono = i == 0 ? Expr(1.0) : slantgeom::pow(t, static_cast<std::int64_t>(i));
    out = out + coeffs_[i] * mono;
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c = a.coeffs_;
  for (auto& v : c) v *= s;
  return Polynomial(std::move(c));
}

namespace {

class PolyConverter {
 public:
  explicit PolyConverter(std::string_view var) : var_(var) {}

  std::optional<Polynomial> operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    auto p = compute(e);
    memo_.emplace(e.id(), p);
    return p;
  }

 private:
  std::optional<Polynomial> compute(const Expr& e) {
    switch (e.op()) {
      case Op::Constant: return Polynomial::constant(e.value());
      case Op::Variable:
        if (e.name() == var_) return Polynomial::identity();
        return std::nullopt;
      case Op::Add:
      case Op::Sub:
      case Op::Mul: {
        auto a = (*this)(e.operand(0));
        auto b = (*this)(e.operand(1));
        if (!a || !b) return std::nullopt;
        if (e.op() == Op::Add) return *a + *b;
        if (e.op() == Op::Sub) return *a - *b;
        return *a * *b;
      }
      case Op::Div: {
        auto a = (*this)(e.operand(0));
        auto b = (*this)(e.operand(1));
        if (!a || !b || b->degree() != 0 || b->coefficients().empty()) return std::nullopt;
        return (1.0 / b->coefficients()[0]) * *a;
      }
      case Op::Pow: {
        const Rational r = e.exponent();
        if (r.den != 1 || r.num < 0) return std::nullopt;
        auto a = (*this)(e.operand(0));
        if (!a) return std::nullopt;
        return a->pow(static_cast<std::size_t>(r.num));
      }
      default: {
        // A transcendental of a constant subtree is still a constant.
        if (!free_variables(e).empty()) return std::nullopt;
        return Polynomial::constant(evaluate(e, {}));
      }
    }
  }

  std::string var_;
  std::unordered_map<const void*, std::optional<Polynomial>> memo_;
};

}  // namespace

std::optional<Polynomial> as_polynomial(const Expr& e, std::string_view var) {
  try {
    return PolyConverter(var)(e);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace slantgeom
