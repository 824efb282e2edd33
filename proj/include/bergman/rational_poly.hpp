#ifndef BERGMAN_RATIONAL_POLY_HPP
#define BERGMAN_RATIONAL_POLY_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace bergman {

/// Univariate polynomial in alpha with exact rational coefficients.
///
/// coefficients()[i] multiplies alpha^i. Trailing zeros are always stripped,
/// so the zero polynomial has no coefficients and degree() == -1.
class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(std::initializer_list<mpq_class> coeffs);
  explicit RationalPoly(std::vector<mpq_class> coeffs);
  /// Constant polynomial.
  static RationalPoly constant(const mpq_class& c);
  /// alpha itself.
  static RationalPoly identity();

  const std::vector<mpq_class>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of alpha^i (zero past the degree).
  mpq_class coefficient(int i) const;
  const mpq_class& leading() const { return coeffs_.back(); }

  mpq_class evaluate(const mpq_class& alpha) const;
  double evaluate(double alpha) const;

  RationalPoly& operator+=(const RationalPoly& other);
  RationalPoly& operator-=(const RationalPoly& other);
  RationalPoly& operator*=(const RationalPoly& other);
  RationalPoly& operator*=(const mpq_class& scalar);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
  friend RationalPoly operator*(RationalPoly a, const mpq_class& s) { return a *= s; }
  friend RationalPoly operator*(const mpq_class& s, RationalPoly a) { return a *= s; }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Human-readable form such as "4*a^2 + 16*a + 16".
  std::string to_string(const std::string& var = "a") const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

}  // namespace bergman

#endif  // BERGMAN_RATIONAL_POLY_HPP
