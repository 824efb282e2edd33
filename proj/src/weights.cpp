#include "bergman/weights.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

#include "bergman/error.hpp"
#include "bergman/format.hpp"

namespace bergman {

namespace {

// Beyond this index closed-form moments switch from the running product to
// lgamma, trading a few ulps for O(1) cost.
constexpr std::size_t kProductLimit = 100000;

void check_alpha(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::alpha_out_of_range,
                "alpha out of range: standard weights need alpha > -1, got " +
                    format_double(alpha));
  }
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::gamma_out_of_range,
                "gamma out of range: Gaussian weights need gamma > 0, got " +
                    format_double(gamma));
  }
}

std::string format_parameter(const Parameter& p) {
  return p.exact ? format_rational(*p.exact) : format_double(p.value);
}

// log of the closed-form root moment, used for range checks.
double log_root_moment(const RadialWeight& root, std::size_t n) {
  const double x = static_cast<double>(n);
  const double p = root.parameter().value;
  if (root.root_kind() == WeightKind::standard) {
    return std::lgamma(x + 1.0) + std::lgamma(p + 2.0) - std::lgamma(x + p + 2.0);
  }
  return std::lgamma(x + 1.0) - x * std::log(p);
}

double closed_form_root_moment(const RadialWeight& root, std::size_t n) {
  const double log_m = log_root_moment(root, n);
  if (log_m < std::log(DBL_MIN)) {
    std::ostringstream os;
    os << "moment underflow at index " << n << ": omega_n ~ 10^"
       << static_cast<long long>(std::floor(log_m / std::log(10.0)));
    throw Error(ErrorCode::moment_underflow, os.str());
  }
  if (log_m > std::log(DBL_MAX)) {
    std::ostringstream os;
    os << "moment overflow at index " << n << ": omega_n ~ 10^"
       << static_cast<long long>(std::floor(log_m / std::log(10.0)));
    throw Error(ErrorCode::moment_overflow, os.str());
  }
  if (n > kProductLimit) return std::exp(log_m);

  const double p = root.parameter().value;
  double m = 1.0;
  if (root.root_kind() == WeightKind::standard) {
    for (std::size_t k = 1; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      m *= kk / (kk + p + 1.0);
    }
  } else {
    for (std::size_t k = 1; k <= n; ++k) m *= static_cast<double>(k) / p;
  }
  return m;
}

// prod_{j=1}^{depth} 4 (n + j)^2
double star_divisor(std::size_t n, int depth) {
  double d = 1.0;
  for (int j = 1; j <= depth; ++j) {
    const double t = static_cast<double>(n) + j;
    d *= 4.0 * t * t;
  }
  return d;
}

double outer_limit(const RadialWeight& w, const QuadratureConfig& cfg,
                   std::size_t moment_index) {
  return w.domain() == Domain::disk ? 1.0 : plane_cutoff(w, cfg, moment_index);
}

double checked_quadrature(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg,
                          const std::string& what) {
  const QuadratureResult res = integrate(f, a, b, cfg);
  if (!res.converged || !std::isfinite(res.value) || res.value > DBL_MAX) {
    throw Error(ErrorCode::non_integrable_weight,
                "non-integrable weight: " + what + " did not converge within " +
                    std::to_string(cfg.max_subdivisions) + " subdivisions");
  }
  return res.value;
}

}  // namespace

RadialWeight RadialWeight::standard(double alpha) {
  check_alpha(alpha);
  return RadialWeight(
      std::make_shared<const Root>(Root{WeightKind::standard, Domain::disk,
                                        Parameter::from_double(alpha), {}, "std"}),
      0);
}

RadialWeight RadialWeight::standard(const mpq_class& alpha) {
  check_alpha(to_double(alpha));
  if (alpha <= -1) {
    throw Error(ErrorCode::alpha_out_of_range, "alpha out of range: alpha <= -1");
  }
  return RadialWeight(
      std::make_shared<const Root>(Root{WeightKind::standard, Domain::disk,
                                        Parameter::from_rational(alpha), {}, "std"}),
      0);
}

RadialWeight RadialWeight::gaussian(double gamma) {
  check_gamma(gamma);
  return RadialWeight(
      std::make_shared<const Root>(Root{WeightKind::gaussian, Domain::plane,
                                        Parameter::from_double(gamma), {}, "gauss"}),
      0);
}

RadialWeight RadialWeight::gaussian(const mpq_class& gamma) {
  if (gamma <= 0) {
    throw Error(ErrorCode::gamma_out_of_range, "gamma out of range: gamma <= 0");
  }
  check_gamma(to_double(gamma));
  return RadialWeight(
      std::make_shared<const Root>(Root{WeightKind::gaussian, Domain::plane,
                                        Parameter::from_rational(gamma), {}, "gauss"}),
      0);
}

RadialWeight RadialWeight::custom(Domain domain, Density density,
                                  std::string label) {
  if (!density) {
    throw Error(ErrorCode::invalid_argument, "custom weight needs a density");
  }
  return RadialWeight(
      std::make_shared<const Root>(Root{WeightKind::custom, domain,
                                        Parameter::from_double(0.0),
                                        std::move(density), std::move(label)}),
      0);
}

RadialWeight RadialWeight::star_iterate(const RadialWeight& base, int depth) {
  if (depth < 1) {
    throw Error(ErrorCode::invalid_argument, "star iterate depth must be >= 1");
  }
  return RadialWeight(base.root_, base.depth_ + depth);
}

Domain RadialWeight::domain() const { return root_->domain; }

WeightKind RadialWeight::kind() const {
  return depth_ > 0 ? WeightKind::star_iterate : root_->kind;
}

WeightKind RadialWeight::root_kind() const { return root_->kind; }

RadialWeight RadialWeight::root() const { return RadialWeight(root_, 0); }

const Parameter& RadialWeight::parameter() const { return root_->param; }

bool RadialWeight::has_closed_form_moments() const {
  return root_->kind == WeightKind::standard || root_->kind == WeightKind::gaussian;
}

double RadialWeight::root_density(double r) const {
  const double p = root_->param.value;
  switch (root_->kind) {
    case WeightKind::standard:
      if (r >= 1.0) return 0.0;
      return (p + 1.0) * std::pow(1.0 - r * r, p);
    case WeightKind::gaussian:
      return p * std::exp(-p * r * r);
    default:
      return root_->density(r);
  }
}

std::string RadialWeight::describe() const {
  std::string inner;
  switch (root_->kind) {
    case WeightKind::standard: inner = "std:" + format_parameter(root_->param); break;
    case WeightKind::gaussian: inner = "gauss:" + format_parameter(root_->param); break;
    default: inner = "custom:" + root_->label; break;
  }
  if (depth_ == 0) return inner;
  if (depth_ == 1) return "star(" + inner + ")";
  return "star^" + std::to_string(depth_) + "(" + inner + ")";
}

bool operator==(const RadialWeight& a, const RadialWeight& b) {
  if (a.depth_ != b.depth_) return false;
  if (a.root_ == b.root_) return true;
  const auto& ra = *a.root_;
  const auto& rb = *b.root_;
  if (ra.kind != rb.kind || ra.kind == WeightKind::custom) return false;
  if (ra.param.exact && rb.param.exact) return *ra.param.exact == *rb.param.exact;
  return ra.param.value == rb.param.value;
}

RadialWeight star(const RadialWeight& w) { return RadialWeight::star_iterate(w, 1); }

double plane_cutoff(const RadialWeight& w, const QuadratureConfig& cfg,
                    std::size_t moment_index) {
  if (cfg.upper_cutoff > 0.0) return cfg.upper_cutoff;
  if (w.root_kind() != WeightKind::gaussian) {
    throw Error(ErrorCode::invalid_argument,
                "plane weight " + w.describe() + " needs an explicit upper_cutoff");
  }
  const double gamma = w.parameter().value;
  const double base = std::sqrt(-std::log(cfg.abs_tol) / gamma) + 5.0;
  // t^m e^{-gamma t} (t = r^2) peaks at m / gamma with spread sqrt(m) / gamma.
  const double m = static_cast<double>(moment_index + w.depth()) + 1.0;
  const double t_max = (m + 12.0 * std::sqrt(m) - std::log(cfg.abs_tol) + 10.0) / gamma;
  return std::max(base, std::sqrt(t_max));
}

double density(const RadialWeight& w, double r, const QuadratureConfig& cfg) {
  if (r < 0.0) throw Error(ErrorCode::invalid_argument, "negative radius");
  if (w.depth() == 0) return w.root_density(r);
  if (r == 0.0) {
    throw Error(ErrorCode::singular_at_origin,
                "singular at origin: " + w.describe() + " is defined on the punctured domain");
  }
  const RadialWeight inner = w.depth() == 1
                                 ? w.root()
                                 : RadialWeight::star_iterate(w.root(), w.depth() - 1);
  const double upper = outer_limit(w, cfg, 0);
  if (r >= upper) return 0.0;
  auto integrand = [&](double s) { return density(inner, s, cfg) * std::log(s / r) * s; };
  return checked_quadrature(integrand, r, upper, cfg, "star density integral");
}

double moment(const RadialWeight& w, std::size_t n, const QuadratureConfig& cfg) {
  if (w.has_closed_form_moments()) {
    const double base = closed_form_root_moment(w.root(), n + w.depth());
    const double m = base / star_divisor(n, w.depth());
    if (m == 0.0) {
      throw Error(ErrorCode::moment_underflow,
                  "moment underflow at index " + std::to_string(n));
    }
    return m;
  }
  const RadialWeight root = w.root();
  const std::size_t shifted = n + w.depth();
  const double upper = outer_limit(root, cfg, shifted);
  auto integrand = [&](double r) {
    return 2.0 * std::pow(r, 2.0 * static_cast<double>(shifted) + 1.0) * root.root_density(r);
  };
  const double base = checked_quadrature(integrand, 0.0, upper, cfg,
                                         "moment " + std::to_string(shifted));
  if (!(base > 0.0)) {
    throw Error(ErrorCode::non_integrable_weight,
                "non-integrable weight: moment " + std::to_string(shifted) +
                    " is not positive");
  }
  return base / star_divisor(n, w.depth());
}

double quadrature_moment(const RadialWeight& w, std::size_t n,
                         const QuadratureConfig& cfg) {
  const double upper = outer_limit(w, cfg, n);
  const double power = 2.0 * static_cast<double>(n) + 1.0;
  auto integrand = [&](double r) { return 2.0 * std::pow(r, power) * density(w, r, cfg); };
  // The integrand is positive, so the relative criterion alone terminates and
  // high moments are not swamped by the absolute floor.
  QuadratureConfig outer = cfg;
  outer.abs_tol = 0.0;
  return checked_quadrature(integrand, 0.0, upper, outer, "moment " + std::to_string(n));
}

mpq_class exact_moment(const RadialWeight& w, std::size_t n) {
  if (!w.has_closed_form_moments()) {
    throw Error(ErrorCode::no_closed_form,
                "no closed form: exact moments need a standard or Gaussian root, got " +
                    w.describe());
  }
  // A double parameter is itself a dyadic rational.
  const mpq_class p = w.parameter().exact.value_or(mpq_class(w.parameter().value));
  const std::size_t shifted = n + w.depth();
  mpq_class m = 1;
  for (std::size_t k = 1; k <= shifted; ++k) {
    const mpq_class kk(static_cast<unsigned long>(k));
    if (w.root_kind() == WeightKind::standard) {
      m *= kk / (kk + p + 1);
    } else {
      m *= kk / p;
    }
  }
  for (int j = 1; j <= w.depth(); ++j) {
    const mpq_class t(static_cast<unsigned long>(n + j));
    m /= 4 * t * t;
  }
  m.canonicalize();
  return m;
}

MomentSequence moments(const RadialWeight& w, std::size_t max_index,
                       const QuadratureConfig& cfg) {
  cfg.validate();
  MomentSequence seq{w, {}, {}};
  seq.values.reserve(max_index + 1);
  const MomentProvenance prov =
      w.depth() > 0 ? MomentProvenance::star_relation
                    : (w.has_closed_form_moments() ? MomentProvenance::closed_form
                                                   : MomentProvenance::quadrature);
  for (std::size_t n = 0; n <= max_index; ++n) {
    seq.values.push_back(moment(w, n, cfg));
    seq.provenance.push_back(prov);
  }
  return seq;
}

MomentSequence star_moments(const MomentSequence& base) {
  if (base.values.size() < 2) {
    throw Error(ErrorCode::insufficient_moments,
                "insufficient moments: star relation needs omega_0..omega_N with N >= 1");
  }
  MomentSequence out{star(base.weight), {}, {}};
  out.values.reserve(base.values.size() - 1);
  for (std::size_t n = 0; n + 1 < base.values.size(); ++n) {
    const double t = static_cast<double>(n + 1);
    out.values.push_back(base.values[n + 1] / (4.0 * t * t));
    out.provenance.push_back(MomentProvenance::star_relation);
  }
  return out;
}

std::pair<double, double> moment_ratio_bounds(const RadialWeight& a,
                                              const RadialWeight& b,
                                              std::size_t max_index,
                                              const QuadratureConfig& cfg) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t k = 0; k <= max_index; ++k) {
    const double r = moment(a, k, cfg) / moment(b, k, cfg);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

}  // namespace bergman
