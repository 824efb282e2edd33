#include "bergman/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergman/error.hpp"
#include "bergman/format.hpp"
#include "bergman/plane.hpp"
#include "bergman/starcalc.hpp"
#include "bergman/zeros.hpp"

namespace bergman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kRatioWindow = 16;

double trailing_ratio(const KernelSeries& k) {
  const auto& a = k.coefficients;
  const std::size_t n = a.size();
  if (n < 2) return kInf;
  const std::size_t window = std::min(kRatioWindow, n - 1);
  double rho = 0.0;
  for (std::size_t i = n - 1 - window; i + 1 < n; ++i) {
    if (!(a[i] > 0.0)) return kInf;
    rho = std::max(rho, a[i + 1] / a[i]);
  }
  return rho;
}

void check_domain(const KernelSeries& k, cdouble zeta, double disk_guard) {
  const double r = std::abs(zeta);
  if (r >= k.domain_radius) {
    throw Error(ErrorCode::outside_domain,
                "outside domain: |zeta| = " + format_double(r) + " >= " +
                    format_double(k.domain_radius));
  }
  if (k.domain_radius == 1.0 && r > disk_guard) {
    throw Error(ErrorCode::outside_domain,
                "outside domain: |zeta| = " + format_double(r) + " exceeds the disk guard " +
                    format_double(disk_guard));
  }
}

}  // namespace

KernelSeries kernel_series(const RadialWeight& w, std::size_t truncation,
                           const QuadratureConfig& cfg) {
  if (truncation < 1) throw Error(ErrorCode::invalid_argument, "truncation must be >= 1");
  std::vector<double> a;
  a.reserve(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n) {
    const double m = moment(w, n, cfg);
    const double c = 1.0 / m;
    if (!std::isfinite(c) || !(c > 0.0)) {
      throw Error(m > 1.0 ? ErrorCode::moment_overflow : ErrorCode::moment_underflow,
                  "kernel coefficient out of range at index " + std::to_string(n));
    }
    a.push_back(c);
  }
  return KernelSeries{std::move(a), w.domain() == Domain::disk ? 1.0 : kInf, w};
}

double series_tail_bound(const KernelSeries& k, double r) {
  if (r == 0.0) return 0.0;
  const double rho = trailing_ratio(k);
  if (!(rho * r < 1.0)) return kInf;
  const double n = static_cast<double>(k.truncation());
  const double last = k.coefficients.back() * std::pow(r, n);
  return last * (rho * r) / (1.0 - rho * r);
}

double series_derivative_tail_bound(const KernelSeries& k, double r) {
  const double rho = trailing_ratio(k);
  const double n = static_cast<double>(k.truncation());
  // Term ratio (j+1) a_{j+1} r^j / (j a_j r^(j-1)) <= rho r (n+2)/(n+1) for j > n.
  const double q = rho * r * (n + 2.0) / (n + 1.0);
  if (!(q < 1.0)) return kInf;
  const double first = (n + 1.0) * rho * k.coefficients.back() * std::pow(r, n);
  return first / (1.0 - q);
}

void eval_truncated(const KernelSeries& k, cdouble zeta, cdouble& value, cdouble& derivative) {
  const auto& a = k.coefficients;
  value = 0.0;
  derivative = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) {
    derivative = derivative * zeta + value;
    value = value * zeta + a[i];
  }
}

EvalResult eval(const KernelSeries& k, cdouble zeta, double tol, double disk_guard) {
  check_domain(k, zeta, disk_guard);
  const double r = std::abs(zeta);
  EvalResult out;
  cdouble acc = 0.0;
  double abs_acc = 0.0;
  for (std::size_t i = k.coefficients.size(); i-- > 0;) {
    acc = acc * zeta + k.coefficients[i];
    abs_acc = abs_acc * r + k.coefficients[i];
  }
  out.value = acc;
  out.abs_sum = abs_acc;
  out.terms_used = k.coefficients.size();
  out.tail_bound = series_tail_bound(k, r);
  if (!(out.tail_bound <= tol * std::max(1.0, abs_acc))) {
    throw Error(ErrorCode::truncation_insufficient,
                "truncation insufficient: tail bound " + format_double(out.tail_bound) +
                    " at |zeta| = " + format_double(r) + " with N = " +
                    std::to_string(k.truncation()));
  }
  return out;
}

EvalResult eval_auto(const RadialWeight& w, cdouble zeta, double tol,
                     const QuadratureConfig& cfg, const KernelOptions& opts) {
  std::size_t n = opts.initial_truncation;
  while (true) {
    try {
      return eval(kernel_series(w, n, cfg), zeta, tol, opts.disk_guard);
    } catch (const Error& e) {
      const bool retry = e.code() == ErrorCode::truncation_insufficient &&
                         n * 2 <= opts.max_truncation;
      if (!retry) throw;
    }
    n *= 2;
  }
}

KernelSeries kernel_series_for_radius(const RadialWeight& w, double r, double rel_tol,
                                      const QuadratureConfig& cfg, const KernelOptions& opts) {
  if (w.domain() == Domain::disk && r >= 1.0) {
    throw Error(ErrorCode::outside_domain, "outside domain: radius " + format_double(r));
  }
  std::size_t n = 64;
  while (true) {
    KernelSeries k = kernel_series(w, n, cfg);
    double scale = 0.0;
    for (std::size_t i = k.coefficients.size(); i-- > 0;) scale = scale * r + k.coefficients[i];
    if (series_tail_bound(k, r) <= rel_tol * scale) return k;
    if (n * 2 > opts.max_truncation) {
      throw Error(ErrorCode::truncation_insufficient,
                  "truncation insufficient: N = " + std::to_string(n) +
                      " does not resolve radius " + format_double(r));
    }
    n *= 2;
  }
}

bool has_closed_form(const RadialWeight& w) { return w.has_closed_form_moments(); }

cdouble closed_form(const RadialWeight& w, cdouble zeta) {
  const double p = w.parameter().value;
  switch (w.root_kind()) {
    case WeightKind::standard: {
      if (std::abs(1.0 - zeta) == 0.0) {
        throw Error(ErrorCode::branch_point, "branch point: closed form singular at zeta = 1");
      }
      return star_kernel_closed_form(w.depth()).value(p, zeta);
    }
    case WeightKind::gaussian:
      return sb_star_iterate(w.parameter(), w.depth()).value(zeta);
    default:
      throw Error(ErrorCode::no_closed_form,
                  "no closed form for weight " + w.describe());
  }
}

cdouble kernel_value(const RadialWeight& w, cdouble zeta, const QuadratureConfig& cfg) {
  if (has_closed_form(w)) return closed_form(w, zeta);
  return eval_auto(w, zeta, 1e-14, cfg).value;
}

cdouble bergman_kernel(const RadialWeight& w, cdouble z, cdouble xi, const QuadratureConfig& cfg) {
  return kernel_value(w, std::conj(z) * xi, cfg);
}

double point_eval_norm(const RadialWeight& w, cdouble z, double p, const QuadratureConfig& cfg) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::invalid_argument,
                "point evaluation norm needs 1 <= p < inf (the bound for p < 1 is not known)");
  }
  if (w.domain() == Domain::disk && std::abs(z) >= 1.0) {
    throw Error(ErrorCode::outside_domain, "outside domain: |z| >= 1");
  }
  const double diag = kernel_value(w, std::norm(z), cfg).real();
  if (!std::isfinite(diag) || !(diag > 0.0)) {
    throw Error(ErrorCode::diagonal_divergence,
                "diagonal divergence: B(|z|^2) = " + format_double(diag));
  }
  return std::pow(diag, 1.0 / p);
}

ExtremalValues extremal_values(const RadialWeight& w, cdouble z, double p, cdouble xi,
                               const QuadratureConfig& cfg, bool require_zero_free) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::invalid_argument, "extremal functions need 1 <= p < inf");
  }
  if (require_zero_free) {
    ZeroConfig zc;
    zc.quad = cfg;
    const ZeroReport rep = zeros_of_Bz(w, z, zc);
    if (!rep.count_in_radius.empty() && rep.count_in_radius.begin()->second > 0) {
      throw Error(ErrorCode::kernel_has_zero,
                  "kernel has zero: B_z vanishes in the domain, the extremal functions are "
                  "not defined");
    }
  }
  const cdouble b_xi = bergman_kernel(w, z, xi, cfg);
  const double b_zz = kernel_value(w, std::norm(z), cfg).real();
  // 2/q = 2 - 2/p for the conjugate exponent q (q = inf when p = 1).
  const double two_over_q = 2.0 - 2.0 / p;
  ExtremalValues out;
  out.F = b_xi * std::pow(std::conj(b_xi), two_over_q - 1.0) * std::pow(b_zz, 1.0 - two_over_q);
  out.G = std::pow(b_xi, 2.0 / p);
  return out;
}

}  // namespace bergman
