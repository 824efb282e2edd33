#ifndef BERGMAN_WEIGHTS_HPP
#define BERGMAN_WEIGHTS_HPP

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bergman/format.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

enum class Domain { disk, plane };

enum class WeightKind { standard, gaussian, star_iterate, custom };

/// A real weight parameter (alpha or gamma). `exact` is set when the value
/// was given as a rational, which enables the exact-arithmetic routes.
struct Parameter {
  double value = 0.0;
  std::optional<mpq_class> exact;

  static Parameter from_double(double v) { return {v, std::nullopt}; }
  static Parameter from_rational(const mpq_class& q) { return {to_double(q), q}; }
};

/// Radial weight on the unit disk or on the plane.
///
/// A weight is a root (standard, Gaussian or custom density) together with a
/// star-iterate depth. Iterating star on an iterate adds depths, so
/// star_iterate(star_iterate(w, a), b) and star_iterate(w, a + b) are the
/// same value.
class RadialWeight {
 public:
  using Density = std::function<double(double)>;

  /// nu_alpha(r) = (alpha + 1)(1 - r^2)^alpha on the disk, alpha > -1.
  static RadialWeight standard(double alpha);
  static RadialWeight standard(const mpq_class& alpha);
  /// omega_gamma(r) = gamma * exp(-gamma r^2) on the plane, gamma > 0.
  static RadialWeight gaussian(double gamma);
  static RadialWeight gaussian(const mpq_class& gamma);
  /// Density supplied as a function of the radius. No closed forms.
  static RadialWeight custom(Domain domain, Density density,
                             std::string label = "custom");
  static RadialWeight star_iterate(const RadialWeight& base, int depth);

  Domain domain() const;
  /// star_iterate whenever depth() > 0, otherwise the root kind.
  WeightKind kind() const;
  WeightKind root_kind() const;
  int depth() const { return depth_; }
  /// The weight with the star depth stripped.
  RadialWeight root() const;
  /// alpha for standard roots, gamma for Gaussian roots.
  const Parameter& parameter() const;
  /// Root density at radius r (depth ignored).
  double root_density(double r) const;
  /// True when the root is standard or Gaussian.
  bool has_closed_form_moments() const;

  /// Canonical expression, e.g. "star^2(std:1/2)".
  std::string describe() const;

  friend bool operator==(const RadialWeight& a, const RadialWeight& b);

 private:
  struct Root {
    WeightKind kind;
    Domain domain;
    Parameter param;
    Density density;
    std::string label;
  };

  RadialWeight(std::shared_ptr<const Root> root, int depth)
      : root_(std::move(root)), depth_(depth) {}

  std::shared_ptr<const Root> root_;
  int depth_ = 0;
};

/// The associated weight omega*(r) = int_r^R omega(s) log(s/r) s ds.
RadialWeight star(const RadialWeight& w);

/// Radius at which plane integrals of `w` are truncated. Honors a positive
/// cfg.upper_cutoff; otherwise Gaussian roots use
/// sqrt(-log(abs_tol) / gamma) + 5, widened so that the n-th moment
/// integrand r^(2n+1) e^(-gamma r^2) has also decayed.
double plane_cutoff(const RadialWeight& w, const QuadratureConfig& cfg,
                    std::size_t moment_index = 0);

/// Pointwise density. Star iterates are evaluated by (nested) adaptive
/// quadrature of the defining integral; r = 0 is rejected for them.
double density(const RadialWeight& w, double r, const QuadratureConfig& cfg = {});

/// omega_n = 2 int r^(2n+1) omega(r) dr. Closed forms for standard and
/// Gaussian roots, the star relation for iterates, quadrature otherwise.
double moment(const RadialWeight& w, std::size_t n, const QuadratureConfig& cfg = {});

/// omega_n by direct quadrature of the density, star iterates included
/// (nested quadrature). This is the independent route used by checks.
double quadrature_moment(const RadialWeight& w, std::size_t n,
                         const QuadratureConfig& cfg = {});

/// Exact omega_n for standard/Gaussian roots at any star depth. Double
/// parameters are taken at their exact binary value. Throws no_closed_form
/// for custom roots.
mpq_class exact_moment(const RadialWeight& w, std::size_t n);

enum class MomentProvenance { closed_form, quadrature, star_relation };

struct MomentSequence {
  RadialWeight weight;
  std::vector<double> values;
  std::vector<MomentProvenance> provenance;

  std::size_t max_index() const { return values.empty() ? 0 : values.size() - 1; }
};

/// omega_0 ... omega_N for w.
MomentSequence moments(const RadialWeight& w, std::size_t max_index,
                       const QuadratureConfig& cfg = {});

/// (omega*)_n = omega_{n+1} / (4 (n+1)^2); the result is one entry shorter.
MomentSequence star_moments(const MomentSequence& base);

/// min and max of moment(a, k) / moment(b, k) over k <= max_index. Bounded
/// ratios are the finite surrogate for the equivalence a ~ b.
std::pair<double, double> moment_ratio_bounds(const RadialWeight& a,
                                              const RadialWeight& b,
                                              std::size_t max_index,
                                              const QuadratureConfig& cfg = {});

}  // namespace bergman

#endif  // BERGMAN_WEIGHTS_HPP
