#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slantgeom {

enum class ErrorCode {
  UnboundVariable,
  DomainViolation,
  ParseError,
  SingularMetric,
  InvalidStructure,
  InvalidCurve,
  NotConstantSpeed,
  NotSlant,
  NonPolynomialInput,
  DegenerateFrame,
  VanishingCurvatureDenominator,
  NullTangent,
  NullNormal,
  NotDistinguishedParametrization,
  LegendreNullCurve,
  GeodesicNullCurve,
  NormalNotNull,
  ProportionalityViolated,
  DegenerateSlant,
  SamplingFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the failure
/// class so callers (and the CLI) can route on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::ParseError,
              std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace slantgeom
