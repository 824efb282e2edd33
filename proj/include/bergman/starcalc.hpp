#ifndef BERGMAN_STARCALC_HPP
#define BERGMAN_STARCALC_HPP

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <vector>

#include "bergman/kernels.hpp"
#include "bergman/rational_poly.hpp"

namespace bergman {

/// Polynomial in zeta whose coefficients are exact polynomials in alpha.
///
/// Holds the numerators p_{alpha,n}(zeta) = sum_k c_{alpha,n,k} zeta^k of the
/// iterated star kernels of the standard weights. The level is the number of
/// star steps; a level-n numerator has n + 1 coefficients.
class AlphaPolynomial {
 public:
  AlphaPolynomial(std::vector<RationalPoly> zeta_coefficients, int level);

  int level() const { return level_; }
  const std::vector<RationalPoly>& coefficients() const { return coeffs_; }
  const RationalPoly& coefficient(std::size_t k) const { return coeffs_.at(k); }

  /// c_{alpha,n,k} at a fixed alpha, exactly.
  std::vector<mpq_class> coefficients_at(const mpq_class& alpha) const;
  /// Same, evaluated exactly at the binary value of alpha and then rounded.
  std::vector<double> coefficients_at(double alpha) const;

  std::complex<double> evaluate(double alpha, std::complex<double> zeta) const;
  std::complex<double> evaluate_derivative(double alpha, std::complex<double> zeta) const;

  friend bool operator==(const AlphaPolynomial& a, const AlphaPolynomial& b) {
    return a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<RationalPoly> coeffs_;
  int level_;
};

/// B_{alpha,n}(zeta) = p_{alpha,n}(zeta) / (1 - zeta)^(2 + alpha + 2n).
struct StarKernelClosedForm {
  AlphaPolynomial numerator;

  int level() const { return numerator.level(); }
  /// 2 + alpha + 2n.
  double pole_exponent(double alpha) const { return 2.0 + alpha + 2.0 * level(); }

  std::complex<double> value(double alpha, std::complex<double> zeta) const;
  std::complex<double> derivative(double alpha, std::complex<double> zeta) const;
};

/// Level 0: the numerator 1 of the standard kernel itself.
AlphaPolynomial standard_numerator();

/// p_{alpha,1}(zeta) = 4(2 + alpha) + 4(2 + alpha)^2 zeta.
AlphaPolynomial p_base();

/// One application of the star map to B = p / (1 - zeta)^(2 + alpha + 2m):
///   4p'(1-z)^2 + 4s p(1-z) + 4z p''(1-z)^2 + 8s z p'(1-z) + 4s(s+1) z p,
/// with s = 2 + alpha + 2m.
AlphaPolynomial star_step(const AlphaPolynomial& p);

inline constexpr int kDefaultDepthCap = 12;

/// p_{alpha,n}, memoized. Throws depth_cap outside 1 <= n <= depth_cap.
AlphaPolynomial p_n(int n, int depth_cap = kDefaultDepthCap);

/// Closed form for star^n(std:alpha); n = 0 gives the standard kernel.
StarKernelClosedForm star_kernel_closed_form(int n, int depth_cap = kDefaultDepthCap);

/// Top coefficient of star_step(p) from the aggregated formula
///   4 c [m - s + m(m-1) - 2 s m + s(s+1)],  c = c_{alpha,m,m}.
RationalPoly leading_coefficient_step(const AlphaPolynomial& p);

/// b_k = 4 (k+1)^2 a_{k+1}: the star map on kernel coefficients.
std::vector<mpq_class> star_coefficient_map(const std::vector<mpq_class>& a);
std::vector<double> star_coefficient_map(const std::vector<double>& a);

/// Taylor coefficients 0..N of p(zeta) (1 - zeta)^-(2 + alpha + 2n).
KernelSeries series_from_closed_form(const StarKernelClosedForm& f, double alpha,
                                     std::size_t truncation);
std::vector<mpq_class> series_from_closed_form_exact(const StarKernelClosedForm& f,
                                                     const mpq_class& alpha,
                                                     std::size_t truncation);

/// |c_{alpha,n,n}| - sum_{k<n} |c_{alpha,n,k}|, computed exactly and rounded.
/// Positive means p_{alpha,n} has all n zeros in the open unit disk.
double rouche_margin(int n, double alpha);

struct ThresholdSearch {
  double resolution = 1e-6;
  int confirm_points = 10;
  double search_limit = 1e6;
};

/// Smallest alpha (to `resolution`) with a positive Rouche margin that stays
/// positive on the next `confirm_points` grid points. Coarse doubling then
/// bisection. n = 1 clamps to -1 + resolution.
double rouche_threshold(int n, const ThresholdSearch& opts = {});

}  // namespace bergman

#endif  // BERGMAN_STARCALC_HPP
