#pragma once

// Built-in verification suite: every check compares a library computation on
// the bundled fixtures against an expected value or an independent route.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace slantgeom {

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus s) noexcept;

struct CheckResult {
  std::string criterion;   // "AC-1" ... "AC-12"
  std::string id;          // stable dotted identifier
  std::string description;
  double residual = 0.0;
  double threshold = 0.0;
  /// Falsification checks pass when the residual exceeds the threshold.
  bool expect_above = false;
  CheckStatus status = CheckStatus::Skipped;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string note;
};

struct CriterionSummary {
  std::string id;
  std::string title;
  CheckStatus status = CheckStatus::Skipped;
  double worst_residual = 0.0;
  std::size_t checks = 0;
  std::size_t failed = 0;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::vector<CriterionSummary> criteria() const;
};

struct SuiteOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  /// Replace example 1 by its φ-scaled (non-normal) variant everywhere.
  bool perturb_example1 = false;
  double perturb_factor = 1.1;
};

std::string_view criterion_title(std::string_view criterion);

VerificationReport run_verification_suite(const SuiteOptions& options = {});

}  // namespace slantgeom
