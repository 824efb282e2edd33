#ifndef BERGMAN_PLANE_HPP
#define BERGMAN_PLANE_HPP

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <vector>

#include "bergman/checks.hpp"
#include "bergman/weights.hpp"
#include "bergman/zeros.hpp"

namespace bergman {

/// B(zeta) = prefactor * q(gamma zeta) * exp(gamma zeta), the kernel of the
/// n-th star iterate of the Gaussian weight gamma e^{-gamma |z|^2}.
///
/// The prefactor is fixed by the coefficient map: 4^n gamma^n, which makes q
/// monic with integer coefficients (q_1 = 1 + x, q_2 = x^2 + 4x + 2).
struct ExpKernelClosedForm {
  Parameter gamma;
  int level = 0;
  std::vector<mpq_class> polynomial;  // q_j, index = power of x

  double prefactor() const;
  /// 4^n gamma^n with gamma at its exact (rational or binary) value.
  mpq_class exact_prefactor() const;

  cdouble value(cdouble zeta) const;
  cdouble derivative(cdouble zeta) const;
};

inline constexpr int kPlaneDepthCap = 12;

/// e^{gamma zeta}. Throws magnitude_overflow (message carries log|B|) when
/// the value is not representable.
cdouble sb_kernel(double gamma, cdouble zeta);

/// Applies b_k = 4 (k+1)^2 a_{k+1} n times to a_k = gamma^k / k! and reads
/// the polynomial part off the resulting coefficient ratios.
ExpKernelClosedForm sb_star_iterate(const Parameter& gamma, int n);
ExpKernelClosedForm sb_star_iterate(double gamma, int n);

/// Taylor coefficients 0..N of prefactor * q(gamma zeta) e^{gamma zeta}.
std::vector<mpq_class> sb_taylor_coefficients_exact(const ExpKernelClosedForm& f,
                                                    std::size_t truncation);

/// The n roots of q_n mapped to zeta = x / gamma. The exponential factor has
/// no zeros, so the count is n.
ZeroReport sb_zeros(double gamma, int n);

/// ||f||_{F^p_gamma}: the A^p norm for the Gaussian weight with parameter
/// gamma p / 2, or sup |f| e^{-(gamma/2)|z|^2} for p = inf.
double sb_norm(const PolynomialFunction& f, double gamma, double p,
               const QuadratureConfig& cfg = {});

/// e^{(gamma/2) |z|^2}.
double sb_point_eval_norm(double gamma, cdouble z);

/// |f(z)| <= e^{(gamma/2)|z|^2} ||f||_{F^p_gamma}, p in (0, inf].
CheckOutcome sb_point_eval_bound(double gamma, cdouble z, double p,
                                 const PolynomialFunction& f,
                                 const QuadratureConfig& cfg = {});

}  // namespace bergman

#endif  // BERGMAN_PLANE_HPP
