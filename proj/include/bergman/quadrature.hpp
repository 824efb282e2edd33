#ifndef BERGMAN_QUADRATURE_HPP
#define BERGMAN_QUADRATURE_HPP

#include <cstddef>
#include <functional>

namespace bergman {

/// Tolerances and limits shared by every numerical integral in the library.
///
/// `upper_cutoff` truncates integrals over [0, inf) on the plane. A value of
/// zero means "derive it from the weight" (Gaussian weights use
/// sqrt(-log(abs_tol) / gamma) + 5).
struct QuadratureConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  std::size_t max_subdivisions = 4000;
  double upper_cutoff = 0.0;

  /// Throws Error(invalid_argument) on non-positive tolerances or zero
  /// subdivisions.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t subdivisions = 0;
  bool converged = false;
};

/// Globally adaptive 10/21-point Gauss-Kronrod integration of f over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |I|) or max_subdivisions is
/// reached. Never throws for convergence failures; callers inspect
/// `converged`.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureConfig& cfg);

/// Single 21-point Kronrod panel; returns {kronrod, |kronrod - gauss|}.
QuadratureResult gauss_kronrod_panel(const std::function<double(double)>& f,
                                     double a, double b);

}  // namespace bergman

#endif  // BERGMAN_QUADRATURE_HPP
