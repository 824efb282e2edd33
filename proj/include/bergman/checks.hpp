#ifndef BERGMAN_CHECKS_HPP
#define BERGMAN_CHECKS_HPP

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bergman/kernels.hpp"
#include "bergman/weights.hpp"

namespace bergman {

/// Analytic polynomial test function f(zeta) = sum f_k zeta^k.
struct PolynomialFunction {
  std::vector<cdouble> coefficients;

  static constexpr std::size_t kDegreeCap = 10;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  cdouble operator()(cdouble zeta) const;
  PolynomialFunction derivative() const;

  static PolynomialFunction monomial(std::size_t k);
  /// Coefficients uniform in the complex unit square [-1, 1]^2.
  static PolynomialFunction random(std::size_t degree, std::mt19937_64& rng);
};

/// Gaussian-rational coefficients for the exact identity routes.
struct ComplexRational {
  mpq_class re;
  mpq_class im;
};
using ExactPolynomial = std::vector<ComplexRational>;

/// Coefficients p/q with |p| <= 64, 1 <= q <= 16, seeded.
ExactPolynomial random_exact_polynomial(std::size_t degree, std::mt19937_64& rng);

/// One verified identity or bound.
///
/// pass <=> rel_err <= tolerance, where rel_err = abs_err / |rhs| (abs_err
/// alone when |rhs| < 1e-300). Bound checks store lhs <= rhs as
/// rel_err = max(0, lhs/rhs - 1). Skipped checks record why in `note` and do
/// not count as failures.
struct CheckOutcome {
  std::string name;
  cdouble lhs;
  cdouble rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool pass = false;
  double tolerance = 0.0;
  bool skipped = false;
  std::string note;
};

CheckOutcome equality_outcome(std::string name, cdouble lhs, cdouble rhs, double tolerance);
CheckOutcome bound_outcome(std::string name, double lhs, double rhs, double tolerance);
CheckOutcome skipped_outcome(std::string name, std::string reason);

/// int g(xi) w(xi) dA(xi) with dA normalized (pi^-1 dx dy): adaptive radial
/// quadrature of 2 r w(r) times an `angular`-point trapezoid mean in theta.
cdouble area_integral(const std::function<cdouble(cdouble)>& g, const RadialWeight& w,
                      const QuadratureConfig& cfg, std::size_t angular);

/// <f, g>_w by the orthogonality reduction sum f_k conj(g_k) omega_k.
cdouble inner_product(const PolynomialFunction& f, const PolynomialFunction& g,
                      const RadialWeight& w, const QuadratureConfig& cfg = {});
/// <f, g>_w by direct 2-D quadrature.
cdouble inner_product_quadrature(const PolynomialFunction& f, const PolynomialFunction& g,
                                 const RadialWeight& w, const QuadratureConfig& cfg = {});
/// Both routes, compared at `tolerance`.
CheckOutcome inner_product_check(const PolynomialFunction& f, const PolynomialFunction& g,
                                 const RadialWeight& w, const QuadratureConfig& cfg = {},
                                 double tolerance = 1e-8);

/// ||h||_{A^p_w}^p by area_integral of |h|^p.
double lp_norm_pow(const std::function<cdouble(cdouble)>& h, const RadialWeight& w, double p,
                   const QuadratureConfig& cfg, std::size_t angular = 256);

/// f(z) against <f, B_z>_w by 2-D quadrature with the truncated kernel.
CheckOutcome reproducing_check(const RadialWeight& w, const PolynomialFunction& f, cdouble z,
                               const QuadratureConfig& cfg = {}, double tolerance = 1e-8);
/// sum f_k (omega_k a_k) z^k with omega_k a_k formed from two independent
/// routes; exact for closed-form weights (see reproducing_exact).
cdouble reproducing_reduction(const RadialWeight& w, const PolynomialFunction& f, cdouble z,
                              const QuadratureConfig& cfg = {});
/// True when omega_k * a_k == 1 exactly for k <= degree, with omega_k from
/// exact_moment and a_k from the closed-form Taylor expansion of the kernel.
bool reproducing_exact(const RadialWeight& w, std::size_t degree);

enum class MomentRoute { star_relation, quadrature };

/// <f,g>_w = 4 <f', g'>_{w*} + w(D) f(0) conj(g(0)). With star_relation the
/// moments of w* come from omega_{k+1} / (4 (k+1)^2); with quadrature every
/// moment (including those of w*) is integrated directly.
CheckOutcome littlewood_paley_check(const RadialWeight& w, const PolynomialFunction& f,
                                    const PolynomialFunction& g,
                                    const QuadratureConfig& cfg = {},
                                    MomentRoute route = MomentRoute::star_relation,
                                    double tolerance = 1e-10);
/// The same identity in exact rational arithmetic; true iff both sides agree.
bool littlewood_paley_exact(const RadialWeight& w, const ExactPolynomial& f,
                            const ExactPolynomial& g);

/// ||G_z^{w,p}||_p against B_z(z)^(1/p): quadrature of |B_z|^2 w against
/// B_z(z), compared after taking p-th roots. Skipped when B_z has a zero;
/// for 0 < p < 1 the values are recorded with skipped set.
CheckOutcome sharpness_check(const RadialWeight& w, cdouble z, double p,
                             const QuadratureConfig& cfg = {}, double tolerance = 1e-6);

/// |f(z)| <= B_z(z)^(1/p) ||f||_{A^p_w}.
CheckOutcome hoelder_check(const RadialWeight& w, const PolynomialFunction& f, cdouble z,
                           double p, const QuadratureConfig& cfg = {});

/// n_eta^p(f, R) with eta(r) = (1 - r^2)^eta_exponent: ratio of the
/// integrals of |f|^p eta and of eta over |z| < R.
double hardy_ratio(const PolynomialFunction& f, double p, double R, double eta_exponent,
                   const QuadratureConfig& cfg = {});

}  // namespace bergman

#endif  // BERGMAN_CHECKS_HPP
