#ifndef BERGMAN_WEIGHT_EXPR_HPP
#define BERGMAN_WEIGHT_EXPR_HPP

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>

#include "bergman/weights.hpp"

namespace bergman {

/// Parse tree of a weight expression:
///
///   expr   := "std:" number | "gauss:" number | "star(" expr ")"
///           | "star^" digits "(" expr ")"
///   number := ["-"] digits ["." digits] [("e"|"E") ["+"|"-"] digits]
///           | ["-"] digits "/" digits
///
/// Numbers are kept as exact rationals. Whitespace is not allowed.
struct WeightExpr {
  enum class Kind { standard, gaussian, star };

  Kind kind = Kind::standard;
  /// alpha or gamma for leaves.
  mpq_class parameter;
  /// Star depth for Kind::star nodes.
  int depth = 0;
  std::shared_ptr<const WeightExpr> inner;

  /// Nested stars collapse: star(star^2(x)) has canonical form star^3(x).
  std::string canonical() const;
  RadialWeight to_weight() const;
};

/// Throws syntax_error ("syntax error at offset k: expected ..."),
/// alpha_out_of_range (alpha <= -1) or gamma_out_of_range (gamma <= 0).
WeightExpr parse_weight(std::string_view text);

/// Exact rational from a decimal or p/q literal; syntax_error otherwise.
mpq_class parse_rational(std::string_view text);

}  // namespace bergman

#endif  // BERGMAN_WEIGHT_EXPR_HPP
