// slantgeom: structure checks, curve reports and the built-in verification
// suite. Exit codes: 0 pass, 1 check failure, 2 usage or parse error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "slantgeom/error.hpp"
#include "slantgeom/fixtures.hpp"
#include "slantgeom/manifest.hpp"
#include "slantgeom/report.hpp"

namespace sg = slantgeom;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  return out;
}

// Text goes to stdout unless JSON was requested there.
void emit(const std::string& text, const std::string& json, const std::string& json_path) {
  if (json_path.empty()) {
    std::cout << text;
    return;
  }
  if (json_path == "-") {
    std::cout << json;
    return;
  }
  std::cout << text;
  std::ofstream out(json_path);
  if (!out) throw UsageError("cannot write '" + json_path + "'");
  out << json;
}

struct Common {
  std::size_t samples = 100;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::string box;
  std::string json;
};

void add_common(CLI::App* cmd, Common& c, bool sampling) {
  if (sampling) {
    cmd->add_option("--samples", c.samples, "number of sample points")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", c.tol, "residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "sampling seed");
    cmd->add_option("--box", c.box, "sampling box lo1,hi1,lo2,hi2,lo3,hi3");
  }
  cmd->add_option("--json", c.json, "write a JSON report to this path ('-' for stdout)");
}

int check_structure(const std::string& path, const Common& c) {
  const sg::Manifest m = sg::load_manifest(path);
  sg::SampleOptions so;
  so.count = c.samples;
  so.seed = c.seed;
  so.tol = c.tol;
  if (!c.box.empty()) {
    const auto b = numbers(c.box, "--box");
    if (b.size() != 6) throw UsageError("--box needs six numbers");
    so.override_box = true;
    for (std::size_t i = 0; i < 3; ++i) {
      so.box.lo[i] = b[2 * i];
      so.box.hi[i] = b[2 * i + 1];
      if (!(so.box.lo[i] < so.box.hi[i])) throw UsageError("--box bounds must satisfy lo < hi");
    }
  }
  const sg::StructureReport r = sg::check_structure(*m.structure, so, c.tol);
  emit(sg::to_text(r), sg::to_json(r), c.json);
  return r.passed() ? kPass : kFail;
}

int curve_report(const std::string& path, const std::string& name, const std::string& at, const std::string& grid,
                 const Common& c) {
  const sg::Manifest m = sg::load_manifest(path);
  const auto names = m.curve_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("no curve '" + name + "' in " + path + " (curves: " + (known.empty() ? "none" : known) + ")");
  }
  const sg::Curve curve = m.curve(name);
  std::vector<double> ts;
  if (!at.empty()) {
    ts = numbers(at, "--at");
  } else if (!grid.empty()) {
    const auto g = numbers(grid, "--grid");
    if (g.size() != 3 || g[2] < 1 || g[2] != std::floor(g[2])) throw UsageError("--grid needs a,b,n with integer n >= 1");
    const auto n = static_cast<std::size_t>(g[2]);
    for (std::size_t i = 0; i < n; ++i) ts.push_back(n == 1 ? g[0] : g[0] + (g[1] - g[0]) * static_cast<double>(i) / static_cast<double>(n - 1));
  } else {
    ts = curve.grid_parameters(5);
  }
  if (ts.empty()) throw UsageError("no parameter values");
  sg::FrameOptions fo;
  fo.order_tol = c.tol;
  const sg::CurveAnalysis a = sg::analyze_curve(curve, ts, fo);
  emit(sg::to_text(a), sg::to_json(a), c.json);
  for (const auto& p : a.points)
    if (p.error_code) return kFail;
  return kPass;
}

int verify_paper(const Common& c, bool perturb) {
  sg::SuiteOptions o;
  o.samples = c.samples;
  o.seed = c.seed;
  o.perturb_example1 = perturb;
  const sg::VerificationReport r = sg::run_verification_suite(o);
  emit(sg::to_text(r), sg::to_json(r), c.json);
  return r.passed() ? kPass : kFail;
}

int dump(const std::string& what) {
  if (what == "example1") {
    std::cout << sg::dump_manifest(*sg::fixtures::example1(),
                                   {sg::fixtures::curve_a(), sg::fixtures::curve_b(), sg::fixtures::curve_c()});
  } else if (what == "example2") {
    std::cout << sg::dump_manifest(*sg::fixtures::example2(), {sg::fixtures::example2_legendre()});
  } else if (what == "flat") {
    std::cout << sg::dump_manifest(*sg::fixtures::flat());
  } else {
    const sg::Manifest m = sg::load_manifest(what);
    std::vector<sg::Curve> curves;
    for (const auto& n : m.curve_names()) curves.push_back(m.curve(n));
    std::cout << sg::dump_manifest(*m.structure, curves);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slantgeom: structure checks and frames of slant curves"};
  app.require_subcommand(1);

  Common common;
  std::string manifest, curve_name, at, grid, dump_target;
  bool perturb = false;

  auto* cs = app.add_subcommand("check-structure", "axioms, normality, alpha and beta, classification");
  cs->add_option("manifest", manifest, "manifest file")->required();
  add_common(cs, common, true);

  auto* cr = app.add_subcommand("curve-report", "kinematics and regime-dispatched frames along a curve");
  cr->add_option("manifest", manifest, "manifest file")->required();
  cr->add_option("curve", curve_name, "curve name")->required();
  auto* at_opt = cr->add_option("--at", at, "comma separated parameter values");
  cr->add_option("--grid", grid, "a,b,n: n evenly spaced values in [a, b]")->excludes(at_opt);
  cr->add_option("--tol", common.tol, "osculating-order tolerance")->check(CLI::PositiveNumber);
  cr->add_option("--json", common.json, "write a JSON report to this path ('-' for stdout)");

  auto* vp = app.add_subcommand("verify-paper", "run the built-in verification suite");
  add_common(vp, common, true);
  vp->add_flag("--perturb", perturb, "replace example 1 by its non-normal scaled-phi variant");

  auto* dp = app.add_subcommand("dump", "print a manifest for a built-in fixture (example1, example2, flat) or a file");
  dp->add_option("what", dump_target, "fixture name or manifest path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*cs) return check_structure(manifest, common);
    if (*cr) return curve_report(manifest, curve_name, at, grid, common);
    if (*vp) return verify_paper(common, perturb);
    if (*dp) return dump(dump_target);
  } catch (const sg::ParseError& e) {
    std::cerr << (manifest.empty() ? dump_target : manifest) << ":" << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const sg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
