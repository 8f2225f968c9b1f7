#include "slantgeom/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace slantgeom {

using nlohmann::json;

namespace {

// nlohmann writes non-finite numbers as null; keep infinities readable.
json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json vec(const Vec3& v) { return json::array({num(v.x()), num(v.y()), num(v.z())}); }

std::string fmt(double v, int prec = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

std::string fmt(const Vec3& v) { return "(" + fmt(v.x()) + ", " + fmt(v.y()) + ", " + fmt(v.z()) + ")"; }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

// Display only: drops 0/x terms, which simplify() keeps for their domain.
Expr tidy(const Expr& e, std::map<const void*, Expr>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  Expr out = e;
  if (e.arity() > 0) {
    const Expr a = tidy(e.operand(0), memo);
    const Expr b = e.arity() > 1 ? tidy(e.operand(1), memo) : Expr();
    switch (e.op()) {
      case Op::Add: out = a + b; break;
      case Op::Sub: out = a - b; break;
      case Op::Mul: out = a * b; break;
      case Op::Div: out = a.is_constant(0.0) ? Expr() : a / b; break;
      case Op::Pow: out = pow(a, e.exponent()); break;
      case Op::Sqrt: out = sqrt(a); break;
      case Op::Exp: out = exp(a); break;
      case Op::Log: out = log(a); break;
      case Op::Sinh: out = sinh(a); break;
      case Op::Cosh: out = cosh(a); break;
      case Op::Sin: out = sin(a); break;
      case Op::Cos: out = cos(a); break;
      case Op::Abs: out = abs(a); break;
      case Op::Sign: out = signum(a); break;
      default: break;
    }
  }
  memo.emplace(e.id(), out);
  return out;
}

std::string display(const Expr& e) {
  std::map<const void*, Expr> memo;
  return tidy(simplify(e), memo).to_string();
}

}  // namespace

StructureReport check_structure(const ParacontactStructure& s, const SampleOptions& sampling, double tol) {
  StructureReport r;
  r.tol = tol;
  r.seed = sampling.seed;
  const auto pts = sample_points(s.chart(), sampling);
  r.samples = pts.size();
  r.axioms = axiom_residuals(s, pts);
  ClassifyOptions co;
  co.normality_tol = tol;
  r.classification = classify(s, pts, co);
  r.alpha_expr = display(s.alpha());
  r.beta_expr = display(s.beta());
  for (std::size_t i = 0; i < std::min<std::size_t>(5, pts.size()); ++i) {
    const PointData d = s.at(pts[i]);
    r.alpha_beta.push_back({pts[i], d.alpha, d.beta});
  }
  return r;
}

std::string to_text(const StructureReport& r) {
  std::ostringstream os;
  const AxiomResiduals& a = r.axioms;
  os << "samples " << r.samples << ", seed " << r.seed << ", tol " << sci(r.tol) << "\n\n";
  os << "axiom residuals\n";
  const std::pair<const char*, double> rows[] = {
      {"eta(xi) - 1", a.eta_xi},         {"phi^2 - (I - eta x xi)", a.phi_squared},
      {"phi xi", a.phi_xi},               {"eta o phi", a.eta_phi},
      {"g(phi X, phi Y) + g - eta eta", a.compatibility}, {"eta - g(., xi)", a.eta_metric},
      {"g symmetry", a.symmetry},         {"trace phi", a.trace_phi},
      {"fundamental form symmetry", a.fundamental_form}};
  for (const auto& [name, v] : rows) os << "  " << pad(name, 32) << sci(v) << "\n";
  os << "  " << pad("min |det g|", 32) << sci(a.min_abs_det) << "\n";
  os << "  " << pad("signature (-,+,+)", 32) << (a.signature_ok ? "yes" : "no") << "\n";
  os << "  axioms " << (r.axioms_ok() ? "hold" : "FAIL") << "\n\n";

  const NormalityResiduals& t = r.classification.residuals;
  os << "normality\n";
  os << "  " << pad("N1 residual", 32) << sci(t.normality) << "\n";
  os << "  " << pad("nabla phi defect", 32) << sci(t.nabla_phi) << "\n";
  os << "  " << pad("nabla xi defect", 32) << sci(t.nabla_xi) << "\n";
  os << "  " << (r.normal() ? "normal" : "NOT normal") << "\n\n";

  os << "alpha = " << r.alpha_expr << "\n";
  os << "beta  = " << r.beta_expr << "\n";
  for (const auto& s : r.alpha_beta)
    os << "  at " << fmt(s.point) << ": alpha " << fmt(s.alpha) << ", beta " << fmt(s.beta) << "\n";
  os << "\nclass: " << to_string(r.classification.label) << "\n";
  return os.str();
}

std::string to_json(const StructureReport& r) {
  const AxiomResiduals& a = r.axioms;
  const NormalityResiduals& t = r.classification.residuals;
  json j;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tol"] = r.tol;
  j["axioms"] = {{"eta_xi", num(a.eta_xi)},
                 {"phi_squared", num(a.phi_squared)},
                 {"phi_xi", num(a.phi_xi)},
                 {"eta_phi", num(a.eta_phi)},
                 {"compatibility", num(a.compatibility)},
                 {"eta_metric", num(a.eta_metric)},
                 {"symmetry", num(a.symmetry)},
                 {"trace_phi", num(a.trace_phi)},
                 {"fundamental_form", num(a.fundamental_form)},
                 {"min_abs_det", num(a.min_abs_det)},
                 {"signature_ok", a.signature_ok},
                 {"ok", r.axioms_ok()}};
  j["normality"] = {{"n1", num(t.normality)},
                    {"nabla_phi", num(t.nabla_phi)},
                    {"nabla_xi", num(t.nabla_xi)},
                    {"normal", r.normal()}};
  auto prof = [](const FunctionProfile& p) {
    return json{{"min", num(p.min)}, {"max", num(p.max)}, {"max_gradient", num(p.max_gradient)},
                {"zero", p.zero}, {"constant", p.constant}};
  };
  j["alpha"] = {{"expression", r.alpha_expr}, {"profile", prof(r.classification.alpha)}};
  j["beta"] = {{"expression", r.beta_expr}, {"profile", prof(r.classification.beta)}};
  json samples = json::array();
  for (const auto& s : r.alpha_beta) samples.push_back({{"point", vec(s.point)}, {"alpha", num(s.alpha)}, {"beta", num(s.beta)}});
  j["alpha_beta_samples"] = samples;
  j["class"] = std::string(to_string(r.classification.label));
  j["passed"] = r.passed();
  return j.dump(2) + "\n";
}

// ------------------------------------------------------------------ curves

std::string to_text(const CurveAnalysis& a) {
  std::ostringstream os;
  const CurveKinematics& k = a.kinematics;
  os << "curve " << a.name << ": " << to_string(k.causal) << ", eps1 = " << k.epsilon1 << ", c = " << fmt(k.c)
     << ", eps1 - c^2 = " << fmt(k.gap) << "\n";
  os << "speed residual " << sci(k.speed_residual) << ", slant residual " << sci(k.slant_residual) << "\n";
  for (const CurvePoint& p : a.points) {
    os << "\nt = " << fmt(p.t);
    if (p.error_code) {
      os << "  ERROR " << p.error << "\n";
      continue;
    }
    os << "  regime " << to_string(*p.regime) << ", " << to_string(p.dependence) << "\n";
    if (p.f_frame) {
      const FFrame& f = *p.f_frame;
      os << "  F-frame  upsilon " << f.upsilon << ", residuals ortho " << sci(f.orthonormality_residual) << ", eq "
         << sci(std::max({f.equation_residuals[0], f.equation_residuals[1], f.equation_residuals[2]})) << "\n";
    }
    if (p.frenet) {
      const FrenetApparatus& f = *p.frenet;
      os << "  Frenet order " << f.order << ", eps (" << f.epsilon1 << ", " << f.epsilon2 << ", " << f.epsilon3 << ")\n";
      os << "    E1 " << fmt(f.e1) << "\n";
      if (f.order >= 2) os << "    E2 " << fmt(f.e2) << "\n";
      if (f.order >= 3) os << "    E3 " << fmt(f.e3) << "\n";
      os << "    " << pad("", 10) << pad("direct", 20) << pad("closed form", 20) << "difference\n";
      const FrenetClosedForm* cf = p.closed_form ? &*p.closed_form : nullptr;
      auto row = [&](const char* name, double d, std::optional<double> c) {
        os << "    " << pad(name, 10) << pad(fmt(d), 20);
        if (c) os << pad(fmt(*c), 20) << sci(std::fabs(d - *c));
        os << "\n";
      };
      row("kappa", f.kappa, cf ? std::optional<double>(cf->kappa) : std::nullopt);
      if (f.order >= 3) row("tau", f.tau, cf ? std::optional<double>(cf->tau) : std::nullopt);
      if (cf) {
        os << "    eps2 closed " << cf->epsilon2 << ", alpha " << fmt(cf->alpha) << ", beta " << fmt(cf->beta)
           << ", delta " << fmt(cf->delta) << "\n";
      }
      os << "    residuals " << sci(f.residuals[0]) << " " << sci(f.residuals[1]) << " " << sci(f.residuals[2])
         << ", ortho " << sci(f.orthonormality_residual) << "\n";
    }
    if (p.null_cartan) {
      const NullCartanApparatus& n = *p.null_cartan;
      os << "  null Cartan frame, branch " << (n.branch > 0 ? "+" : "-") << "\n";
      os << "    T " << fmt(n.t) << "\n    N " << fmt(n.n) << "\n    W " << fmt(n.w) << "\n";
      os << "    tau direct " << fmt(n.tau) << ", closed " << fmt(n.tau_closed) << "\n";
      os << "    closed-form residuals tau " << sci(n.tau_residual) << ", N " << sci(n.n_residual) << ", W "
         << sci(n.w_residual) << "\n";
      os << "    printed W form differs by " << sci((n.w_printed - n.w).cwiseAbs().maxCoeff()) << "\n";
      os << "    distinguished " << sci(n.distinguished_residual) << ", frame " << sci(n.frame_residual)
         << ", Cartan " << sci(std::max({n.cartan_residuals[0], n.cartan_residuals[1], n.cartan_residuals[2]}))
         << "\n";
    }
    if (p.null_normal) {
      const NullNormalApparatus& n = *p.null_normal;
      os << "  null normal, branch " << (n.branch > 0 ? "+" : "-") << "\n";
      os << "    T " << fmt(n.t) << "\n    N " << fmt(n.n) << "\n    W " << fmt(n.w) << "\n";
      os << "    kappa direct " << fmt(n.kappa) << ", closed " << fmt(n.kappa_closed) << "\n";
      os << "    alpha " << fmt(n.alpha) << ", recovered from g(N, phi T) " << fmt(n.alpha_recovered) << "\n";
      os << "    closed-form residuals N " << sci(n.n_residual) << ", W " << sci(n.w_residual) << ", kappa "
         << sci(n.kappa_residual) << ", alpha " << sci(n.alpha_residual);
      if (n.legendre_residual) os << ", Legendre form " << sci(*n.legendre_residual);
      os << "\n    frame " << sci(n.frame_residual) << ", Cartan "
         << sci(std::max(n.cartan_residuals[0], n.cartan_residuals[1])) << "\n";
    }
  }
  return os.str();
}

std::string to_json(const CurveAnalysis& a) {
  const CurveKinematics& k = a.kinematics;
  json j;
  j["curve"] = a.name;
  j["causal"] = std::string(to_string(k.causal));
  j["epsilon1"] = k.epsilon1;
  j["c"] = num(k.c);
  j["gap"] = num(k.gap);
  j["speed_residual"] = num(k.speed_residual);
  j["slant_residual"] = num(k.slant_residual);
  json points = json::array();
  for (const CurvePoint& p : a.points) {
    json q;
    q["t"] = p.t;
    if (p.error_code) {
      q["error"] = {{"code", std::string(to_string(*p.error_code))}, {"message", p.error}};
      points.push_back(q);
      continue;
    }
    q["regime"] = std::string(to_string(*p.regime));
    q["dependence"] = std::string(to_string(p.dependence));
    if (p.f_frame) {
      const FFrame& f = *p.f_frame;
      q["f_frame"] = {{"f1", vec(f.f1)}, {"f2", vec(f.f2)}, {"f3", vec(f.f3)}, {"upsilon", f.upsilon},
                      {"orthonormality_residual", num(f.orthonormality_residual)},
                      {"equation_residuals", {num(f.equation_residuals[0]), num(f.equation_residuals[1]),
                                              num(f.equation_residuals[2])}}};
    }
    if (p.frenet) {
      const FrenetApparatus& f = *p.frenet;
      q["frenet"] = {{"order", f.order}, {"e1", vec(f.e1)}, {"e2", vec(f.e2)}, {"e3", vec(f.e3)},
                     {"epsilon", {f.epsilon1, f.epsilon2, f.epsilon3}}, {"kappa", num(f.kappa)}, {"tau", num(f.tau)},
                     {"residuals", {num(f.residuals[0]), num(f.residuals[1]), num(f.residuals[2])}},
                     {"orthonormality_residual", num(f.orthonormality_residual)}};
    }
    if (p.closed_form) {
      const FrenetClosedForm& c = *p.closed_form;
      q["closed_form"] = {{"kappa", num(c.kappa)}, {"tau", num(c.tau)}, {"tau_signed", num(c.tau_signed)},
                          {"epsilon2", c.epsilon2}, {"epsilon3", c.epsilon3}, {"upsilon", c.upsilon},
                          {"alpha", num(c.alpha)}, {"alpha_dot", num(c.alpha_dot)}, {"beta", num(c.beta)},
                          {"delta", num(c.delta)}, {"delta_dot", num(c.delta_dot)},
                          {"denominator", num(c.denominator)}};
      if (p.frenet) {
        q["closed_form"]["kappa_difference"] = num(std::fabs(c.kappa - p.frenet->kappa));
        q["closed_form"]["tau_difference"] = num(std::fabs(c.tau - p.frenet->tau));
      }
    }
    if (p.null_cartan) {
      const NullCartanApparatus& n = *p.null_cartan;
      q["null_cartan"] = {{"t", vec(n.t)}, {"n", vec(n.n)}, {"w", vec(n.w)}, {"tau", num(n.tau)},
                          {"branch", n.branch}, {"tau_closed", num(n.tau_closed)}, {"n_closed", vec(n.n_closed)},
                          {"w_closed", vec(n.w_closed)}, {"w_printed", vec(n.w_printed)},
                          {"distinguished_residual", num(n.distinguished_residual)},
                          {"frame_residual", num(n.frame_residual)},
                          {"cartan_residuals", {num(n.cartan_residuals[0]), num(n.cartan_residuals[1]),
                                                num(n.cartan_residuals[2])}},
                          {"tau_residual", num(n.tau_residual)}, {"n_residual", num(n.n_residual)},
                          {"w_residual", num(n.w_residual)}};
    }
    if (p.null_normal) {
      const NullNormalApparatus& n = *p.null_normal;
      q["null_normal"] = {{"t", vec(n.t)}, {"n", vec(n.n)}, {"w", vec(n.w)}, {"kappa", num(n.kappa)},
                          {"branch", n.branch}, {"n_closed", vec(n.n_closed)}, {"w_closed", vec(n.w_closed)},
                          {"kappa_closed", num(n.kappa_closed)}, {"alpha", num(n.alpha)},
                          {"alpha_recovered", num(n.alpha_recovered)}, {"frame_residual", num(n.frame_residual)},
                          {"proportionality_residual", num(n.proportionality_residual)},
                          {"cartan_residuals", {num(n.cartan_residuals[0]), num(n.cartan_residuals[1])}},
                          {"n_residual", num(n.n_residual)}, {"w_residual", num(n.w_residual)},
                          {"kappa_residual", num(n.kappa_residual)}, {"alpha_residual", num(n.alpha_residual)}};
      if (n.legendre_residual) q["null_normal"]["legendre_residual"] = num(*n.legendre_residual);
    }
    points.push_back(q);
  }
  j["points"] = points;
  return j.dump(2) + "\n";
}

// ------------------------------------------------------------ verification

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "seed " << r.seed << ", samples " << r.samples << "\n";
  for (const CriterionSummary& c : r.criteria()) {
    std::string status(to_string(c.status));
    for (auto& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << "\n" << pad(c.id, 6) << " " << pad(status, 8) << c.title << "\n";
    for (const CheckResult& k : r.checks) {
      if (k.criterion != c.id) continue;
      os << "    " << pad(std::string(to_string(k.status)), 8) << pad(k.id, 34);
      if (k.status != CheckStatus::Skipped)
        os << sci(k.residual) << (k.expect_above ? " > " : " < ") << sci(k.threshold);
      os << "\n";
      if (!k.note.empty() && k.status != CheckStatus::Pass) os << "            " << k.note << "\n";
    }
  }
  os << "\n" << (r.passed() ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

std::string to_json(const VerificationReport& r) {
  json j;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["passed"] = r.passed();
  json crit = json::array();
  for (const CriterionSummary& c : r.criteria()) {
    json checks = json::array();
    for (const CheckResult& k : r.checks) {
      if (k.criterion != c.id) continue;
      checks.push_back({{"id", k.id},
                        {"description", k.description},
                        {"residual", num(k.residual)},
                        {"threshold", k.threshold},
                        {"comparison", k.expect_above ? ">" : "<"},
                        {"status", std::string(to_string(k.status))},
                        {"samples", k.samples},
                        {"seed", k.seed},
                        {"note", k.note}});
    }
    crit.push_back({{"id", c.id},
                    {"title", c.title},
                    {"status", std::string(to_string(c.status))},
                    {"worst_residual", num(c.worst_residual)},
                    {"checks", checks}});
  }
  j["criteria"] = crit;
  return j.dump(2) + "\n";
}

}  // namespace slantgeom
