#pragma once

// Line-oriented structure manifests:
//
//   [chart]
//   coordinates = x, y, z
//   domain = z            (repeatable; each expression must be > 0)
//   box = -2, 2, -2, 2, 0.25, 2
//   [metric]   g11 = -2*z ...   (g_ji may be omitted; if both given they must agree)
//   [phi]      phi11 = 0 ...    (missing entries are 0)
//   [xi]       xi1 ... xi3
//   [eta]      eta1 ... eta3
//   [curve.a]  x = 0, y = -2*sqrt(-t), z = t, interval = (-inf, 0), parameter = t
//
// `#` starts a comment. Errors carry 1-based line and column.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "slantgeom/curve.hpp"

namespace slantgeom {

struct CurveSpec {
  std::string name;
  std::string parameter = "t";
  VecExpr components;
  Interval interval;
};

struct Manifest {
  std::shared_ptr<const ParacontactStructure> structure;
  std::vector<CurveSpec> curves;

  std::vector<std::string> curve_names() const;
  /// Throws Error(InvalidCurve) if there is no curve called `name`.
  Curve curve(std::string_view name) const;
};

/// Throws ParseError for syntax problems and for structures the library
/// rejects (singular metric, bad domain), located at the offending line.
Manifest parse_manifest(std::string_view text);

/// Reads and parses a file; an unreadable file is a ParseError at 0:0.
Manifest load_manifest(const std::string& path);

/// Manifest text that parse_manifest turns back into the same structure and curves.
std::string dump_manifest(const ParacontactStructure& structure, const std::vector<Curve>& curves = {});

}  // namespace slantgeom
