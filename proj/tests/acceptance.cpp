// Runs the verification suite at its default sampling and prints one line per
// acceptance criterion. Failing checks are listed under their criterion.

#include <cstdio>
#include <string>

#include "slantgeom/verify.hpp"

int main() {
  using namespace slantgeom;
  const VerificationReport report = run_verification_suite();
  bool ok = true;
  for (const CriterionSummary& c : report.criteria()) {
    const bool pass = c.status == CheckStatus::Pass;
    ok = ok && pass;
    // falsification checks pass on a large residual, so report their smallest one
    double lowest = -1.0, floor = 0.0;
    for (const CheckResult& k : report.checks)
      if (k.criterion == c.id && k.expect_above && (lowest < 0 || k.residual < lowest)) {
        lowest = k.residual;
        floor = k.threshold;
      }
    std::printf("%-5s %s  %s (%zu checks, ", c.id.c_str(), pass ? "PASS" : "FAIL", c.title.c_str(), c.checks);
    if (lowest >= 0 && c.worst_residual == 0.0)
      std::printf("smallest residual %.3g, must exceed %.3g)\n", lowest, floor);
    else
      std::printf("worst residual %.3g)\n", c.worst_residual);
    for (const CheckResult& k : report.checks) {
      if (k.criterion != c.id || k.status == CheckStatus::Pass) continue;
      std::printf("        %s %s: residual %.3g vs %s %.3g%s%s\n", std::string(to_string(k.status)).c_str(),
                  k.id.c_str(), k.residual, k.expect_above ? ">" : "<=", k.threshold, k.note.empty() ? "" : "; ",
                  k.note.c_str());
    }
  }
  return ok ? 0 : 1;
}
