#include <string>

#include "bergman/weight_expr.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

std::string message_of(std::string_view text) {
  try {
    parse_weight(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("grammar") {
  const auto a = parse_weight("star^2(std:1/2)");
  CHECK(a.canonical() == "star^2(std:1/2)");
  const auto w = a.to_weight();
  CHECK(w.depth() == 2);
  CHECK(w.root_kind() == WeightKind::standard);
  CHECK(w.parameter().exact == mpq_class(1, 2));

  const auto g = parse_weight("star(gauss:2.0)").to_weight();
  CHECK(g.domain() == Domain::plane);
  CHECK(g.depth() == 1);
  CHECK(g.parameter().value == 2.0);

  CHECK(parse_weight("star(star^3(std:0.25))").canonical() == "star^4(std:1/4)");
  CHECK(parse_weight("std:1e-1").canonical() == "std:1/10");
  CHECK(parse_weight("gauss:3/6").canonical() == "gauss:1/2");
}

TEST_CASE("round trip through the canonical form") {
  for (const char* text : {"std:0", "std:-1/2", "gauss:7/3", "star(std:5)", "star^12(gauss:1/8)"}) {
    const auto once = parse_weight(text).canonical();
    CHECK(parse_weight(once).canonical() == once);
    CHECK(parse_weight(once).to_weight() == parse_weight(text).to_weight());
  }
}

TEST_CASE("range and syntax errors") {
  CHECK_ERROR(parse_weight("std:-1"), ErrorCode::alpha_out_of_range);
  CHECK_ERROR(parse_weight("gauss:0"), ErrorCode::gamma_out_of_range);
  CHECK_ERROR(parse_weight("star(std:0"), ErrorCode::syntax_error);
  CHECK_ERROR(parse_weight("std:1/0"), ErrorCode::syntax_error);
  CHECK_ERROR(parse_weight("star^0(std:0)"), ErrorCode::syntax_error);
  CHECK_ERROR(parse_weight("beta:1"), ErrorCode::syntax_error);
  CHECK(message_of("star(std:0") == "syntax error at offset 10: expected ')'");
  CHECK(message_of("std:0x") == "syntax error at offset 5: expected 'end of input'");
  CHECK(message_of("star(std:-3)").find("offset 5") != std::string::npos);
  CHECK(parse_rational("-7/21") == mpq_class(-1, 3));
}
