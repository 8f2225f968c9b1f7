#pragma once

// Structure checks and the text / JSON renderings used by the CLI.

#include <string>
#include <vector>

#include "slantgeom/frames.hpp"
#include "slantgeom/verify.hpp"

namespace slantgeom {

struct AlphaBetaSample {
  Vec3 point;
  double alpha = 0.0;
  double beta = 0.0;
};

struct StructureReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  AxiomResiduals axioms;
  Classification classification;
  std::string alpha_expr;
  std::string beta_expr;
  /// The first few sample points, for display.
  std::vector<AlphaBetaSample> alpha_beta;

  bool axioms_ok() const { return axioms.ok(tol); }
  bool normal() const { return classification.label != StructureClass::NonNormal; }
  bool passed() const { return axioms_ok() && normal(); }
};

StructureReport check_structure(const ParacontactStructure& s, const SampleOptions& sampling, double tol = 1e-9);

std::string to_text(const StructureReport& r);
std::string to_json(const StructureReport& r);

std::string to_text(const CurveAnalysis& a);
std::string to_json(const CurveAnalysis& a);

std::string to_text(const VerificationReport& r);
std::string to_json(const VerificationReport& r);

}  // namespace slantgeom
