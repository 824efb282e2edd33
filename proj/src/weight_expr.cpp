#include "bergman/weight_expr.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/format.hpp"

namespace bergman {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  WeightExpr parse_all() {
    WeightExpr e = expr();
    if (pos_ != text_.size()) fail({"end of input"});
    return e;
  }

  mpq_class number_all() {
    mpq_class q = number();
    if (pos_ != text_.size()) fail({"end of input"});
    return q;
  }

 private:
  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    std::string list;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) list += ", ";
      list += "'" + expected[i] + "'";
    }
    throw Error(ErrorCode::syntax_error,
                "syntax error at offset " + std::to_string(pos_) + ": expected " + list);
  }

  bool accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail({std::string(token)});
  }

  bool at_digit() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string digits() {
    if (!at_digit()) fail({"digit"});
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  mpq_class number() {
    const bool negative = accept("-");
    const std::string whole = digits();
    mpq_class q;
    if (accept("/")) {
      const std::size_t at = pos_;
      const mpz_class den(digits(), 10);
      if (den == 0) {
        pos_ = at;
        fail({"nonzero denominator"});
      }
      q = mpq_class(mpz_class(whole, 10), den);
      q.canonicalize();
    } else {
      std::string frac;
      if (accept(".")) frac = digits();
      mpz_class num(whole + frac, 10);
      mpz_class den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      long exponent = 0;
      if (accept("e") || accept("E")) {
        bool neg_exp = false;
        if (accept("-")) neg_exp = true;
        else accept("+");
        const std::string e = digits();
        if (e.size() > 6) fail({"exponent below 1000000"});
        exponent = std::stol(e);
        if (neg_exp) exponent = -exponent;
      }
      mpz_class ten_pow;
      mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
      if (exponent >= 0) num *= ten_pow;
      else den *= ten_pow;
      q = mpq_class(num, den);
      q.canonicalize();
    }
    return negative ? mpq_class(-q) : q;
  }

  WeightExpr expr() {
    const std::size_t start = pos_;
    WeightExpr e;
    if (accept("std:")) {
      e.kind = WeightExpr::Kind::standard;
      e.parameter = number();
      if (!(e.parameter > -1)) {
        throw Error(ErrorCode::alpha_out_of_range,
                    "alpha out of range: " + format_rational(e.parameter) +
                        " at offset " + std::to_string(start) + " (need alpha > -1)");
      }
      return e;
    }
    if (accept("gauss:")) {
      e.kind = WeightExpr::Kind::gaussian;
      e.parameter = number();
      if (!(e.parameter > 0)) {
        throw Error(ErrorCode::gamma_out_of_range,
                    "gamma out of range: " + format_rational(e.parameter) +
                        " at offset " + std::to_string(start) + " (need gamma > 0)");
      }
      return e;
    }
    if (accept("star")) {
      e.kind = WeightExpr::Kind::star;
      e.depth = 1;
      if (accept("^")) {
        const std::size_t at = pos_;
        const std::string k = digits();
        if (k.size() > 4 || std::stoi(k) < 1) {
          pos_ = at;
          fail({"star depth between 1 and 9999"});
        }
        e.depth = std::stoi(k);
      }
      expect("(");
      e.inner = std::make_shared<const WeightExpr>(expr());
      expect(")");
      return e;
    }
    fail({"std:", "gauss:", "star"});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Root leaf and the summed star depth above it.
const WeightExpr& collapse(const WeightExpr& e, int& depth) {
  const WeightExpr* node = &e;
  depth = 0;
  while (node->kind == WeightExpr::Kind::star) {
    depth += node->depth;
    node = node->inner.get();
  }
  return *node;
}

}  // namespace

std::string WeightExpr::canonical() const {
  int d = 0;
  const WeightExpr& leaf = collapse(*this, d);
  const std::string root = (leaf.kind == Kind::standard ? "std:" : "gauss:") +
                           format_rational(leaf.parameter);
  if (d == 0) return root;
  if (d == 1) return "star(" + root + ")";
  return "star^" + std::to_string(d) + "(" + root + ")";
}

RadialWeight WeightExpr::to_weight() const {
  int d = 0;
  const WeightExpr& leaf = collapse(*this, d);
  const RadialWeight root = leaf.kind == Kind::standard ? RadialWeight::standard(leaf.parameter)
                                                        : RadialWeight::gaussian(leaf.parameter);
  return d == 0 ? root : RadialWeight::star_iterate(root, d);
}

WeightExpr parse_weight(std::string_view text) { return Parser(text).parse_all(); }

mpq_class parse_rational(std::string_view text) { return Parser(text).number_all(); }

}  // namespace bergman
