#pragma once

// Immutable symbolic scalar expressions over named real variables.
//
// Nodes are shared between trees, so an expression is really a DAG; every
// traversal (evaluate, differentiate, substitute) memoizes on node identity
// and stays linear in the number of distinct nodes.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slantgeom {

enum class Op : std::uint8_t {
  Constant,
  Variable,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Sqrt,
  Exp,
  Log,
  Sinh,
  Cosh,
  Sin,
  Cos,
  Abs,
  Sign,
};

/// Reduced fraction with positive denominator; the only exponents a power
/// node may carry.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const noexcept { return den == 1; }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Variable assignment used by evaluate(). Transparent comparator so lookups
/// by string_view do not allocate.
using Binding = std::map<std::string, double, std::less<>>;

class Expr {
 public:
  /// The constant 0.
  Expr();
  explicit Expr(double value);

  static Expr constant(double value) { return Expr(value); }
  static Expr variable(std::string_view name);

  Op op() const noexcept;
  /// Constant payload; 0 for non-constants.
  double value() const noexcept;
  /// Variable name; empty for non-variables.
  const std::string& name() const noexcept;
  /// Exponent of a Pow node.
  Rational exponent() const noexcept;
  std::size_t arity() const noexcept;
  const Expr& operand(std::size_t i) const;

  bool is_constant() const noexcept { return op() == Op::Constant; }
  bool is_constant(double v) const noexcept { return is_constant() && value() == v; }

  /// Identity of the underlying node (not structural equality).
  bool same_node(const Expr& other) const noexcept { return node_ == other.node_; }
  const void* id() const noexcept { return node_.get(); }

  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  friend Expr operator+(const Expr& a, double b) { return a + Expr(b); }
  friend Expr operator+(double a, const Expr& b) { return Expr(a) + b; }
  friend Expr operator-(const Expr& a, double b) { return a - Expr(b); }
  friend Expr operator-(double a, const Expr& b) { return Expr(a) - b; }
  friend Expr operator*(const Expr& a, double b) { return a * Expr(b); }
  friend Expr operator*(double a, const Expr& b) { return Expr(a) * b; }
  friend Expr operator/(const Expr& a, double b) { return a / Expr(b); }
  friend Expr operator/(double a, const Expr& b) { return Expr(a) / b; }

  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Expr make_node(Op op, std::vector<Expr> args, Rational exponent);

  std::shared_ptr<const Node> node_;
};

Expr pow(const Expr& base, Rational exponent);
Expr pow(const Expr& base, std::int64_t exponent);
Expr sqrt(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sinh(const Expr& e);
Expr cosh(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr abs(const Expr& e);
Expr signum(const Expr& e);

/// Value of `e` under `binding`. Throws Error(UnboundVariable) for a free
/// variable missing from the binding and Error(DomainViolation) outside the
/// domain of a partial function (log, sqrt, division, fractional powers).
double evaluate(const Expr& e, const Binding& binding);

/// Exact partial derivative. Derivatives of abs and signum are emitted as
/// quotients by the argument, so they fail with DomainViolation at 0.
Expr differentiate(const Expr& e, std::string_view var);
/// Batch form; subexpressions shared between the inputs stay shared.
std::vector<Expr> differentiate(const std::vector<Expr>& es, std::string_view var);

/// Constant folding and 0/1 identities, applied bottom-up.
Expr simplify(const Expr& e);

/// Replace variables by expressions (simultaneously).
Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements);
std::vector<Expr> substitute(const std::vector<Expr>& es,
                             const std::map<std::string, Expr, std::less<>>& replacements);

std::set<std::string, std::less<>> free_variables(const Expr& e);
bool depends_on(const Expr& e, std::string_view var);

/// Number of distinct nodes in the DAG.
std::size_t node_count(const Expr& e);

/// Name used when printing / parsing each operator node.
std::string_view function_name(Op op) noexcept;

/// A batch of expressions flattened into a single instruction list over a
/// fixed variable ordering. Shared subexpressions are computed once per
/// call. Uses the same arithmetic kernel as evaluate(), so results are
/// bit-identical to evaluating each output separately.
class Tape {
 public:
  Tape() = default;
  Tape(const std::vector<Expr>& outputs, std::vector<std::string> variables);

  std::size_t input_size() const noexcept { return variables_.size(); }
  std::size_t output_size() const noexcept { return outputs_.size(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

  void run(const double* inputs, double* outputs) const;
  std::vector<double> operator()(const std::vector<double>& inputs) const;

 private:
  struct Instr {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    Rational exponent;
    double constant = 0.0;
  };
  std::vector<std::string> variables_;
  std::vector<Instr> code_;
  std::vector<std::uint32_t> outputs_;
};

}  // namespace slantgeom
