#ifndef BERGMAN_ZEROS_HPP
#define BERGMAN_ZEROS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bergman/kernels.hpp"
#include "bergman/starcalc.hpp"

namespace bergman {

enum class ZeroMethod { companion, iterative_simultaneous, argument_principle };

struct RootEntry {
  cdouble value;
  /// |p(root)| / sum |c_k| |root|^k.
  double residual = 0.0;
  int multiplicity = 1;
};

/// Located roots (each repeated per multiplicity) and zero counts.
struct ZeroReport {
  std::vector<RootEntry> roots;
  std::map<double, int> count_in_radius;
  ZeroMethod method = ZeroMethod::iterative_simultaneous;
  bool certified = false;
  std::string diagnostic;

  /// Number of listed roots with modulus < r.
  int count_within(double r) const;
  double max_modulus() const;
};

/// Circle |zeta| = radius on which the argument principle is evaluated.
struct ContourSpec {
  double radius = 0.5;
  /// Initial trapezoid samples, a power of two >= 64.
  std::size_t samples = 64;
  /// Maximum number of sample doublings.
  int refinement_limit = 20;
  /// Relative floor for min|f| / max|f| on the contour.
  double min_modulus_guard = 1e-12;

  void validate() const;
};

/// An analytic function on |zeta| < analyticity_radius, given by value and
/// derivative. truncation_bound(r), when set, bounds the error of the
/// computed value on |zeta| = r.
struct ContourFunction {
  std::function<void(cdouble, cdouble&, cdouble&)> value_and_derivative;
  double analyticity_radius = 1.0;
  std::function<double(double)> truncation_bound;
};

inline constexpr double kClusterTolerance = 1e-7;
inline constexpr double kResidualThreshold = 1e-9;

/// All roots of sum coeffs[k] zeta^k by Aberth-Ehrlich iteration with Newton
/// polishing. Exact zero roots are split off first. A stalled iteration
/// returns the partial roots with certified = false.
ZeroReport poly_roots(const std::vector<cdouble>& coeffs, int iteration_limit = 500);
ZeroReport poly_roots(const std::vector<double>& coeffs, int iteration_limit = 500);

/// Winding number of f around 0 along |zeta| = contour.radius: trapezoid
/// rule for (1/2 pi i) \oint f'/f with dyadic refinement until the rounded
/// value repeats twice. Throws analyticity_violated, zero_near_contour or
/// truncation_insufficient.
int count_zeros(const ContourFunction& f, const ContourSpec& contour);
int count_zeros(const KernelSeries& k, const ContourSpec& contour);
int count_zeros(const StarKernelClosedForm& f, double alpha, const ContourSpec& contour);

struct ZeroConfig {
  QuadratureConfig quad;
  KernelOptions kernel;
  ContourSpec contour;
  /// Contour nudge on zero_near_contour: radius +- k * step, k <= max.
  double perturbation_step = 1e-3;
  int max_perturbations = 5;
  /// Search radius in xi for plane kernels.
  double plane_search_radius = 4.0;
  /// Count on the truncated series even when a closed form exists.
  bool force_series = false;
};

/// Function object for the one-variable kernel of w: closed form when
/// available (unless forced), otherwise a series truncated so that the tail
/// on |zeta| <= radius is negligible.
ContourFunction kernel_contour_function(const RadialWeight& w, double radius,
                                        const ZeroConfig& cfg);

/// Zeros of xi -> B_z(xi) in the unit disk (disk weights) or in
/// |xi| < plane_search_radius (plane weights), reported in xi. The count is
/// keyed by that xi-radius in count_in_radius.
ZeroReport zeros_of_Bz(const RadialWeight& w, cdouble z, const ZeroConfig& cfg = {});

/// max |zeta| over the roots of p_{alpha,n}. Throws
/// roots_not_all_inside_disk when some root has modulus >= 1.
double largest_zero_modulus(int n, double alpha);

/// Largest r on a 1e-4 grid with sum_{n>=1} a_n r^n < a_0 (tail included),
/// so B_z is zero-free for |z| < r. Disk weights only.
double zero_free_radius(const RadialWeight& w, const ZeroConfig& cfg = {});

/// Zero count of B_z in the disk for z = each radius. Radii must be strictly
/// increasing in (0, 1). Work is spread over `workers` threads.
std::vector<std::pair<double, int>> zero_map(const RadialWeight& w,
                                             const std::vector<double>& radii,
                                             const ZeroConfig& cfg = {},
                                             unsigned workers = 1);

/// For a zero (z0, xi0) of B, evaluates B_w(conj(z0 / w) xi0) at the given w
/// (|w| > |z0|), each divided by the diagonal scale B(|conj(z0) xi0|).
std::vector<double> pair_vanishing_residuals(const RadialWeight& w, cdouble z0, cdouble xi0,
                                             const std::vector<cdouble>& ws,
                                             const QuadratureConfig& cfg = {});

std::string to_string(ZeroMethod method);

}  // namespace bergman

#endif  // BERGMAN_ZEROS_HPP
