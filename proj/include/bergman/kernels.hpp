#ifndef BERGMAN_KERNELS_HPP
#define BERGMAN_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "bergman/quadrature.hpp"
#include "bergman/weights.hpp"

namespace bergman {

using cdouble = std::complex<double>;

/// One-variable kernel B(zeta) = sum a_n zeta^n, a_n = 1 / omega_n, truncated
/// after a_N. The two-variable kernel is B_z(xi) = B(conj(z) xi).
struct KernelSeries {
  std::vector<double> coefficients;
  double domain_radius = 1.0;
  RadialWeight source;

  std::size_t truncation() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

struct EvalResult {
  cdouble value;
  /// Bound on |B(zeta) - value| from the truncation.
  double tail_bound = 0.0;
  std::size_t terms_used = 0;
  /// sum |a_n| |zeta|^n over the kept terms; the natural error scale.
  double abs_sum = 0.0;
};

struct KernelOptions {
  std::size_t initial_truncation = 256;
  std::size_t max_truncation = 16384;
  /// Disk evaluations are refused beyond this modulus.
  double disk_guard = 0.999;
};

/// Coefficients 1/omega_n for n <= N. Star iterates go through the exact star
/// relation, never through quadrature.
KernelSeries kernel_series(const RadialWeight& w, std::size_t truncation,
                           const QuadratureConfig& cfg = {});

/// Bound on sum_{n > N} a_n r^n assuming the trailing coefficient ratios are
/// non-increasing (true for every built-in family). Infinite when the ratio
/// test fails at r.
double series_tail_bound(const KernelSeries& k, double r);
/// Same for the derivative series sum n a_n r^(n-1).
double series_derivative_tail_bound(const KernelSeries& k, double r);

/// Horner evaluation of the truncated series. `tol` is relative to
/// max(1, abs_sum). Throws outside_domain or truncation_insufficient.
EvalResult eval(const KernelSeries& k, cdouble zeta, double tol,
                double disk_guard = KernelOptions{}.disk_guard);

/// Value and derivative of the truncated series, no domain or tail checks.
void eval_truncated(const KernelSeries& k, cdouble zeta, cdouble& value,
                    cdouble& derivative);

/// eval with the truncation raised geometrically from
/// opts.initial_truncation until the tail passes, up to opts.max_truncation.
EvalResult eval_auto(const RadialWeight& w, cdouble zeta, double tol,
                     const QuadratureConfig& cfg = {}, const KernelOptions& opts = {});

/// Series of w truncated (doubling from 64) until the tail on |zeta| <= r is
/// below rel_tol times B(r). Throws truncation_insufficient past
/// opts.max_truncation.
KernelSeries kernel_series_for_radius(const RadialWeight& w, double r, double rel_tol,
                                      const QuadratureConfig& cfg = {},
                                      const KernelOptions& opts = {});

/// True for standard and Gaussian roots at any star depth.
bool has_closed_form(const RadialWeight& w);

/// Closed-form kernel, principal branch for (1 - zeta)^(-s):
///   standard       (1 - zeta)^-(2 + alpha)
///   star^n(std)    p_{alpha,n}(zeta) / (1 - zeta)^(2 + alpha + 2n)
///   gaussian       exp(gamma zeta), star iterates as polynomial * exp.
cdouble closed_form(const RadialWeight& w, cdouble zeta);

/// Closed form when available, otherwise eval_auto at relative 1e-14.
cdouble kernel_value(const RadialWeight& w, cdouble zeta, const QuadratureConfig& cfg = {});

/// B_z(xi) through the one-variable reduction.
cdouble bergman_kernel(const RadialWeight& w, cdouble z, cdouble xi,
                       const QuadratureConfig& cfg = {});

/// Norm of f -> f(z) on A^p_w: B(|z|^2)^(1/p). Only 1 <= p < inf.
double point_eval_norm(const RadialWeight& w, cdouble z, double p,
                       const QuadratureConfig& cfg = {});

struct ExtremalValues {
  cdouble F;
  cdouble G;
};

/// F = B_z(xi) conj(B_z(xi))^(2/q - 1) B_z(z)^(1 - 2/q) and
/// G = B_z(xi)^(2/p), q the conjugate exponent. With `require_zero_free`
/// the kernel B_z is first checked for zeros in the disk (kernel_has_zero).
ExtremalValues extremal_values(const RadialWeight& w, cdouble z, double p, cdouble xi,
                               const QuadratureConfig& cfg = {},
                               bool require_zero_free = true);

}  // namespace bergman

#endif  // BERGMAN_KERNELS_HPP
