#pragma once

#include <string_view>

#include "slantgeom/expr.hpp"

namespace slantgeom {

/// Parse infix text: `+ - * / ^`, parentheses, numeric literals, variables,
/// the constant `pi`, and calls sqrt exp log sinh cosh sin cos abs sign.
/// Exponents must reduce to a rational constant (e.g. `t^(3/2)`).
///
/// `line` and `first_column` locate the text inside a larger file so the
/// thrown ParseError points at the right place.
Expr parse_expr(std::string_view text, std::size_t line = 1, std::size_t first_column = 1);

/// Best rational approximation p/q with q <= max_den, if it matches `v` to
/// within 1e-12 relative; used for exponents.
bool to_rational(double v, Rational& out, std::int64_t max_den = 1000);

}  // namespace slantgeom
