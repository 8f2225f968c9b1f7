#include "slantgeom/expr.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "slantgeom/error.hpp"

namespace slantgeom {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::InvalidStructure: return "InvalidStructure";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::NotConstantSpeed: return "NotConstantSpeed";
    case ErrorCode::NotSlant: return "NotSlant";
    case ErrorCode::NonPolynomialInput: return "NonPolynomialInput";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::VanishingCurvatureDenominator: return "VanishingCurvatureDenominator";
    case ErrorCode::NullTangent: return "NullTangent";
    case ErrorCode::NullNormal: return "NullNormal";
    case ErrorCode::NotDistinguishedParametrization: return "NotDistinguishedParametrization";
    case ErrorCode::LegendreNullCurve: return "LegendreNullCurve";
    case ErrorCode::GeodesicNullCurve: return "GeodesicNullCurve";
    case ErrorCode::NormalNotNull: return "NormalNotNull";
    case ErrorCode::ProportionalityViolated: return "ProportionalityViolated";
    case ErrorCode::DegenerateSlant: return "DegenerateSlant";
    case ErrorCode::SamplingFailed: return "SamplingFailed";
  }
  return "Unknown";
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::DomainViolation, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

struct Expr::Node {
  Op op;
  double value = 0.0;
  std::string name;
  Rational exponent;
  std::vector<Expr> args;
};

namespace {

const std::string& empty_string() {
  static const std::string s;
  return s;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

[[noreturn]] void domain_error(std::string_view what, double x) {
  throw Error(ErrorCode::DomainViolation, std::string(what) + " at argument " + format_double(x));
}

double power(double base, Rational r) {
  if (r.den == 1) {
    if (base == 0.0 && r.num < 0) domain_error("negative power of zero", base);
    return std::pow(base, static_cast<double>(r.num));
  }
  if (base > 0.0) return std::pow(base, r.value());
  if (base == 0.0) {
    if (r.num < 0) domain_error("negative power of zero", base);
    return 0.0;
  }
  if (r.den % 2 == 0) domain_error("even root of negative number", base);
  const double magnitude = std::pow(-base, r.value());
  return (r.num % 2 == 0) ? magnitude : -magnitude;
}

// Shared arithmetic kernel for evaluate() and Tape.
double apply(Op op, double a, double b, Rational r) {
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div:
      if (b == 0.0) domain_error("division by zero", b);
      return a / b;
    case Op::Pow: return power(a, r);
    case Op::Sqrt:
      if (a < 0.0) domain_error("sqrt of negative number", a);
      return std::sqrt(a);
    case Op::Exp: return std::exp(a);
    case Op::Log:
      if (a <= 0.0) domain_error("log of non-positive number", a);
      return std::log(a);
    case Op::Sinh: return std::sinh(a);
    case Op::Cosh: return std::cosh(a);
    case Op::Sin: return std::sin(a);
    case Op::Cos: return std::cos(a);
    case Op::Abs: return std::fabs(a);
    case Op::Sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
    case Op::Constant:
    case Op::Variable: break;
  }
  return 0.0;
}

bool is_binary(Op op) {
  return op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div;
}

std::shared_ptr<const Expr::Node> zero_node() {
  static const auto node = [] {
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Constant;
    return n;
  }();
  return node;
}

// Try to fold a unary function of a constant; returns false when the
// argument is outside the function's domain (the error is then deferred to
// evaluation time).
bool try_fold(Op op, double a, Rational r, double& out) {
  try {
    out = apply(op, a, 0.0, r);
    return std::isfinite(out);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

Expr make_node(Op op, std::vector<Expr> args, Rational exponent) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->exponent = exponent;
  n->args = std::move(args);
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(double value) {
  if (value == 0.0) {
    node_ = zero_node();
    return;
  }
  auto n = std::make_shared<Node>();
  n->op = Op::Constant;
  n->value = value;
  node_ = std::move(n);
}

Expr Expr::variable(std::string_view name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  n->name = std::string(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Op Expr::op() const noexcept { return node_->op; }
double Expr::value() const noexcept { return node_->value; }
const std::string& Expr::name() const noexcept {
  return node_->op == Op::Variable ? node_->name : empty_string();
}
Rational Expr::exponent() const noexcept { return node_->exponent; }
std::size_t Expr::arity() const noexcept { return node_->args.size(); }
const Expr& Expr::operand(std::size_t i) const { return node_->args.at(i); }

// ---------------------------------------------------------------------------
// Smart constructors: constant folding and 0/1 identities only.

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.value() + b.value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return make_node(Op::Add, {a, b}, {});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.value() - b.value());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  return make_node(Op::Sub, {a, b}, {});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.value() * b.value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr();
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (b.is_constant()) return b * a;  // constants on the left
  // c1 * (c2 * x) -> (c1 c2) * x
  if (a.is_constant() && b.op() == Op::Mul && b.operand(0).is_constant())
    return Expr(a.value() * b.operand(0).value()) * b.operand(1);
  return make_node(Op::Mul, {a, b}, {});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && b.value() != 0.0) return Expr(a.value() / b.value());
  if (b.is_constant(1.0)) return a;
  // 0 / x is kept: it carries the domain restriction x != 0.
  return make_node(Op::Div, {a, b}, {});
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.value());
  if (a.op() == Op::Mul && a.operand(0).is_constant()) {
    return Expr(-a.operand(0).value()) * a.operand(1);
  }
  return Expr(-1.0) * a;
}

Expr pow(const Expr& base, Rational exponent) {
  exponent = Rational::make(exponent.num, exponent.den);
  if (exponent.num == 0) return Expr(1.0);
  if (exponent == Rational{1, 1}) return base;
  if (base.is_constant()) {
    double out = 0.0;
    if (try_fold(Op::Pow, base.value(), exponent, out)) return Expr(out);
  }
  return make_node(Op::Pow, {base}, exponent);
}

Expr pow(const Expr& base, std::int64_t exponent) { return pow(base, Rational{exponent, 1}); }

namespace {
Expr unary(Op op, const Expr& e) {
  if (e.is_constant()) {
    double out = 0.0;
    if (try_fold(op, e.value(), {}, out)) return Expr(out);
  }
  return make_node(op, {e}, {});
}
}  // namespace

Expr sqrt(const Expr& e) { return unary(Op::Sqrt, e); }
Expr exp(const Expr& e) { return unary(Op::Exp, e); }
Expr log(const Expr& e) { return unary(Op::Log, e); }
Expr sinh(const Expr& e) { return unary(Op::Sinh, e); }
Expr cosh(const Expr& e) { return unary(Op::Cosh, e); }
Expr sin(const Expr& e) { return unary(Op::Sin, e); }
Expr cos(const Expr& e) { return unary(Op::Cos, e); }
Expr abs(const Expr& e) { return unary(Op::Abs, e); }
Expr signum(const Expr& e) { return unary(Op::Sign, e); }

std::string_view function_name(Op op) noexcept {
  switch (op) {
    case Op::Sqrt: return "sqrt";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sinh: return "sinh";
    case Op::Cosh: return "cosh";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Abs: return "abs";
    case Op::Sign: return "sign";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Pow: return "^";
    case Op::Constant: return "const";
    case Op::Variable: return "var";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Traversals

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> args) {
  switch (e.op()) {
    case Op::Add: return args[0] + args[1];
    case Op::Sub: return args[0] - args[1];
    case Op::Mul: return args[0] * args[1];
    case Op::Div: return args[0] / args[1];
    case Op::Pow: return pow(args[0], e.exponent());
    case Op::Constant:
    case Op::Variable: return e;
    default: return unary(e.op(), args[0]);
  }
}

class Evaluator {
 public:
  explicit Evaluator(const Binding& binding) : binding_(binding) {}

  double operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    double result = 0.0;
    switch (e.op()) {
      case Op::Constant: result = e.value(); break;
      case Op::Variable: {
        auto it = binding_.find(e.name());
        if (it == binding_.end()) throw Error(ErrorCode::UnboundVariable, "variable '" + e.name() + "'");
        result = it->second;
        break;
      }
      default: {
        const double a = (*this)(e.operand(0));
        const double b = e.arity() > 1 ? (*this)(e.operand(1)) : 0.0;
        result = apply(e.op(), a, b, e.exponent());
      }
    }
    memo_.emplace(e.id(), result);
    return result;
  }

 private:
  const Binding& binding_;
  std::unordered_map<const void*, double> memo_;
};

class Differentiator {
 public:
  explicit Differentiator(std::string_view var) : var_(var) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr d = compute(e);
    memo_.emplace(e.id(), d);
    return d;
  }

 private:
  Expr compute(const Expr& e) {
    switch (e.op()) {
      case Op::Constant: return Expr();
      case Op::Variable: return Expr(e.name() == var_ ? 1.0 : 0.0);
      default: break;
    }
    const Expr& f = e.operand(0);
    const Expr df = (*this)(f);
    switch (e.op()) {
      case Op::Add: return df + (*this)(e.operand(1));
      case Op::Sub: return df - (*this)(e.operand(1));
      case Op::Mul: {
        const Expr& g = e.operand(1);
        return df * g + f * (*this)(g);
      }
      case Op::Div: {
        const Expr& g = e.operand(1);
        const Expr dg = (*this)(g);
        if (dg.is_constant(0.0)) return df / g;
        return (df * g - f * dg) / pow(g, 2);
      }
      case Op::Pow: {
        const Rational r = e.exponent();
        const Rational r1 = Rational::make(r.num - r.den, r.den);
        return Expr(r.value()) * pow(f, r1) * df;
      }
      case Op::Sqrt: return df / (Expr(2.0) * e);
      case Op::Exp: return e * df;
      case Op::Log: return df / f;
      case Op::Sinh: return cosh(f) * df;
      case Op::Cosh: return sinh(f) * df;
      case Op::Sin: return cos(f) * df;
      case Op::Cos: return -(sin(f) * df);
      case Op::Abs: return f / e * df;
      case Op::Sign: return make_node(Op::Div, {Expr(), f}, {});
      case Op::Constant:
      case Op::Variable: break;
    }
    return Expr();
  }

  std::string var_;
  std::unordered_map<const void*, Expr> memo_;
};

template <typename Leaf>
class Rewriter {
 public:
  explicit Rewriter(Leaf leaf) : leaf_(std::move(leaf)) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr out;
    if (e.op() == Op::Constant || e.op() == Op::Variable) {
      out = leaf_(e);
    } else {
      std::vector<Expr> args;
      args.reserve(e.arity());
      for (std::size_t i = 0; i < e.arity(); ++i) args.push_back((*this)(e.operand(i)));
      out = rebuild(e, std::move(args));
    }
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  Leaf leaf_;
  std::unordered_map<const void*, Expr> memo_;
};

template <typename Visit>
void visit_nodes(const Expr& e, std::unordered_map<const void*, bool>& seen, Visit& visit) {
  if (!seen.emplace(e.id(), true).second) return;
  for (std::size_t i = 0; i < e.arity(); ++i) visit_nodes(e.operand(i), seen, visit);
  visit(e);
}

}  // namespace

double evaluate(const Expr& e, const Binding& binding) { return Evaluator(binding)(e); }

Expr differentiate(const Expr& e, std::string_view var) { return Differentiator(var)(e); }

std::vector<Expr> differentiate(const std::vector<Expr>& es, std::string_view var) {
  Differentiator d(var);
  std::vector<Expr> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(d(e));
  return out;
}

Expr simplify(const Expr& e) {
  Rewriter rw([](const Expr& leaf) { return leaf; });
  return rw(e);
}

namespace {

auto substitution_leaf(const std::map<std::string, Expr, std::less<>>& replacements) {
  return [&replacements](const Expr& leaf) {
    if (leaf.op() == Op::Variable) {
      if (auto it = replacements.find(leaf.name()); it != replacements.end()) return it->second;
    }
    return leaf;
  };
}

}  // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements) {
  Rewriter rw(substitution_leaf(replacements));
  return rw(e);
}

std::vector<Expr> substitute(const std::vector<Expr>& es,
                             const std::map<std::string, Expr, std::less<>>& replacements) {
  Rewriter rw(substitution_leaf(replacements));
  std::vector<Expr> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(rw(e));
  return out;
}

std::set<std::string, std::less<>> free_variables(const Expr& e) {
  std::set<std::string, std::less<>> vars;
  std::unordered_map<const void*, bool> seen;
  auto visit = [&vars](const Expr& n) {
    if (n.op() == Op::Variable) vars.insert(n.name());
  };
  visit_nodes(e, seen, visit);
  return vars;
}

bool depends_on(const Expr& e, std::string_view var) {
  const auto vars = free_variables(e);
  return vars.find(var) != vars.end();
}

std::size_t node_count(const Expr& e) {
  std::unordered_map<const void*, bool> seen;
  auto visit = [](const Expr&) {};
  visit_nodes(e, seen, visit);
  return seen.size();
}

// ---------------------------------------------------------------------------
// Printing. Output is accepted by parse_expr().

namespace {

int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Pow: return 4;
    case Op::Constant: return e.value() < 0.0 ? 1 : 5;
    default: return 5;
  }
}

void print(const Expr& e, std::ostringstream& os);

void print_wrapped(const Expr& e, bool wrap, std::ostringstream& os) {
  if (wrap) os << '(';
  print(e, os);
  if (wrap) os << ')';
}

void print(const Expr& e, std::ostringstream& os) {
  switch (e.op()) {
    case Op::Constant: os << format_double(e.value()); return;
    case Op::Variable: os << e.name(); return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const int p = precedence(e);
      const Expr& a = e.operand(0);
      const Expr& b = e.operand(1);
      if (e.op() == Op::Mul && a.is_constant(-1.0)) {
        os << '-';
        print_wrapped(b, precedence(b) <= 2, os);
        return;
      }
      print_wrapped(a, precedence(a) < p, os);
      os << ' ' << function_name(e.op()) << ' ';
      // Right operand of - and / needs parentheses at equal precedence.
      const bool strict = e.op() == Op::Sub || e.op() == Op::Div;
      print_wrapped(b, strict ? precedence(b) <= p : precedence(b) < p, os);
      return;
    }
    case Op::Pow: {
      print_wrapped(e.operand(0), precedence(e.operand(0)) <= 4, os);
      const Rational r = e.exponent();
      if (r.den == 1 && r.num >= 0) {
        os << '^' << r.num;
      } else if (r.den == 1) {
        os << "^(" << r.num << ')';
      } else {
        os << "^(" << r.num << '/' << r.den << ')';
      }
      return;
    }
    default:
      os << function_name(e.op()) << '(';
      print(e.operand(0), os);
      os << ')';
      return;
  }
}

}  // namespace

std::string Expr::to_string() const {
  std::ostringstream os;
  print(*this, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Tape

Tape::Tape(const std::vector<Expr>& outputs, std::vector<std::string> variables)
    : variables_(std::move(variables)) {
  std::unordered_map<const void*, std::uint32_t> slot;
  std::unordered_map<std::string, std::uint32_t> var_slot;

  auto emit = [this](Instr instr) {
    code_.push_back(instr);
    return static_cast<std::uint32_t>(code_.size() - 1);
  };
  for (const auto& v : variables_) {
    var_slot.emplace(v, emit(Instr{Op::Variable, static_cast<std::uint32_t>(var_slot.size()), 0, {}, 0.0}));
  }

  std::function<std::uint32_t(const Expr&)> lower = [&](const Expr& e) -> std::uint32_t {
    if (auto it = slot.find(e.id()); it != slot.end()) return it->second;
    std::uint32_t idx = 0;
    switch (e.op()) {
      case Op::Constant: {
        Instr in{Op::Constant, 0, 0, {}, 0.0};
        in.constant = e.value();
        idx = emit(in);
        break;
      }
      case Op::Variable: {
        auto it = var_slot.find(e.name());
        if (it == var_slot.end()) throw Error(ErrorCode::UnboundVariable, "variable '" + e.name() + "'");
        idx = it->second;
        break;
      }
      default: {
        Instr in{e.op(), 0, 0, {}, 0.0};
        in.a = lower(e.operand(0));
        if (e.arity() > 1) in.b = lower(e.operand(1));
        in.exponent = e.exponent();
        idx = emit(in);
      }
    }
    slot.emplace(e.id(), idx);
    return idx;
  };
  outputs_.reserve(outputs.size());
  for (const auto& out : outputs) outputs_.push_back(lower(out));
}

void Tape::run(const double* inputs, double* outputs) const {
  std::vector<double> reg(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case Op::Constant: reg[i] = in.constant; break;
      case Op::Variable: reg[i] = inputs[in.a]; break;
      default: reg[i] = apply(in.op, reg[in.a], is_binary(in.op) ? reg[in.b] : 0.0, in.exponent);
    }
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) outputs[k] = reg[outputs_[k]];
}

std::vector<double> Tape::operator()(const std::vector<double>& inputs) const {
  if (inputs.size() != variables_.size()) {
    throw Error(ErrorCode::UnboundVariable, "tape expects " + std::to_string(variables_.size()) + " inputs");
  }
  std::vector<double> out(outputs_.size());
  run(inputs.data(), out.data());
  return out;
}

}  // namespace slantgeom
