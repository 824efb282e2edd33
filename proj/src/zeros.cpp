#include "bergman/zeros.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "bergman/error.hpp"
#include "bergman/format.hpp"
#include "bergman/plane.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void horner(const std::vector<cdouble>& c, cdouble z, cdouble& v, cdouble& d) {
  v = 0.0;
  d = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    d = d * z + v;
    v = v * z + c[i];
  }
}

double scaled_residual(const std::vector<cdouble>& c, cdouble z) {
  cdouble v;
  cdouble d;
  horner(c, z, v, d);
  double scale = 0.0;
  const double r = std::abs(z);
  for (std::size_t i = c.size(); i-- > 0;) scale = scale * r + std::abs(c[i]);
  return scale > 0.0 ? std::abs(v) / scale : std::abs(v);
}

void assign_multiplicities(std::vector<RootEntry>& roots) {
  const std::size_t n = roots.size();
  std::vector<int> cluster(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = next;
    // Transitive closure so that chains of near roots form one cluster.
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (cluster[j] >= 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (cluster[k] == next && std::abs(roots[j].value - roots[k].value) < kClusterTolerance) {
            cluster[j] = next;
            grew = true;
            break;
          }
        }
      }
    }
    ++next;
  }
  for (std::size_t i = 0; i < n; ++i) {
    roots[i].multiplicity =
        static_cast<int>(std::count(cluster.begin(), cluster.end(), cluster[i]));
  }
}

ZeroReport empty_report(double key) {
  ZeroReport rep;
  rep.method = ZeroMethod::argument_principle;
  rep.certified = true;
  rep.count_in_radius[key] = 0;
  return rep;
}

ContourFunction polynomial_contour(std::vector<cdouble> c, double analyticity) {
  ContourFunction f;
  f.analyticity_radius = analyticity;
  f.value_and_derivative = [c = std::move(c)](cdouble z, cdouble& v, cdouble& d) {
    horner(c, z, v, d);
  };
  return f;
}

std::vector<cdouble> complexify(const std::vector<double>& c) {
  return {c.begin(), c.end()};
}

std::vector<double> p_n_or_one(const RadialWeight& w) {
  if (w.depth() == 0) return {1.0};
  return p_n(w.depth()).coefficients_at(w.parameter().value);
}

// Numerator whose zeros in the domain are those of the closed-form kernel:
// p_{alpha,n}(zeta) on the disk, q_n(gamma zeta) on the plane.
std::vector<cdouble> closed_form_numerator(const RadialWeight& w) {
  if (w.root_kind() == WeightKind::standard) {
    return complexify(p_n_or_one(w));
  }
  const ExpKernelClosedForm f = sb_star_iterate(w.parameter(), w.depth());
  std::vector<cdouble> c;
  double gk = 1.0;
  for (const auto& q : f.polynomial) {
    c.emplace_back(to_double(q) * gk);
    gk *= w.parameter().value;
  }
  return c;
}

}  // namespace

int ZeroReport::count_within(double r) const {
  int n = 0;
  for (const auto& root : roots) {
    if (std::abs(root.value) < r) ++n;
  }
  return n;
}

double ZeroReport::max_modulus() const {
  double m = 0.0;
  for (const auto& root : roots) m = std::max(m, std::abs(root.value));
  return m;
}

void ContourSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::invalid_argument, "contour radius must be positive and finite");
  }
  if (samples < 64 || (samples & (samples - 1)) != 0) {
    throw Error(ErrorCode::invalid_argument, "contour samples must be a power of two >= 64");
  }
  if (refinement_limit < 0) {
    throw Error(ErrorCode::invalid_argument, "refinement_limit must be >= 0");
  }
  if (!(min_modulus_guard >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "min_modulus_guard must be >= 0");
  }
}

ZeroReport poly_roots(const std::vector<cdouble>& coeffs_in, int iteration_limit) {
  std::vector<cdouble> c = coeffs_in;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "poly_roots needs degree >= 1 and a nonzero leading coefficient");
  }
  ZeroReport rep;
  rep.method = ZeroMethod::iterative_simultaneous;
  std::size_t zeros_at_origin = 0;
  while (c[zeros_at_origin] == 0.0) ++zeros_at_origin;
  for (std::size_t i = 0; i < zeros_at_origin; ++i) rep.roots.push_back({0.0, 0.0, 1});

  std::vector<cdouble> q(c.begin() + static_cast<std::ptrdiff_t>(zeros_at_origin), c.end());
  const cdouble lead = q.back();
  for (auto& x : q) x /= lead;
  const std::size_t d = q.size() - 1;
  bool converged = true;
  if (d > 0) {
    std::vector<cdouble> z(d);
    const double radius = std::pow(std::abs(q[0]), 1.0 / static_cast<double>(d));
    for (std::size_t j = 0; j < d; ++j) {
      z[j] = std::polar(radius, kTwoPi * static_cast<double>(j) / static_cast<double>(d) + 0.4);
    }
    converged = false;
    for (int it = 0; it < iteration_limit && !converged; ++it) {
      converged = true;
      for (std::size_t j = 0; j < d; ++j) {
        cdouble v;
        cdouble dv;
        horner(q, z[j], v, dv);
        if (v == 0.0) continue;
        const cdouble ratio = v / dv;
        cdouble sum = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          if (k != j) sum += 1.0 / (z[j] - z[k]);
        }
        const cdouble step = ratio / (1.0 - ratio * sum);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
        z[j] -= step;
        if (std::abs(step) > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z[j]))) {
          converged = false;
        }
      }
    }
    for (auto& root : z) {
      for (int it = 0; it < 3; ++it) {
        cdouble v;
        cdouble dv;
        horner(q, root, v, dv);
        if (dv == 0.0) break;
        const cdouble next = root - v / dv;
        if (scaled_residual(q, next) < scaled_residual(q, root)) root = next;
        else break;
      }
      rep.roots.push_back({root, scaled_residual(c, root), 1});
    }
  }
  assign_multiplicities(rep.roots);
  const bool small = std::all_of(rep.roots.begin(), rep.roots.end(),
                                 [](const RootEntry& r) { return r.residual < kResidualThreshold; });
  rep.certified = small;
  if (!converged && !small) {
    rep.diagnostic = "root iteration stalled after " + std::to_string(iteration_limit) + " iterations";
  }
  rep.count_in_radius[1.0] = rep.count_within(1.0);
  return rep;
}

ZeroReport poly_roots(const std::vector<double>& coeffs, int iteration_limit) {
  return poly_roots(complexify(coeffs), iteration_limit);
}

int count_zeros(const ContourFunction& f, const ContourSpec& contour) {
  contour.validate();
  const double R = contour.radius;
  if (R >= f.analyticity_radius) {
    throw Error(ErrorCode::analyticity_violated,
                "analyticity violated: contour radius " + format_double(R) +
                    " >= analyticity radius " + format_double(f.analyticity_radius));
  }
  double min_mod = kInf;
  double max_mod = 0.0;
  cdouble sum = 0.0;
  auto add_samples = [&](std::size_t m, std::size_t start, std::size_t stride) {
    for (std::size_t j = start; j < m; j += stride) {
      const cdouble zeta =
          std::polar(R, kTwoPi * static_cast<double>(j) / static_cast<double>(m));
      cdouble v;
      cdouble d;
      f.value_and_derivative(zeta, v, d);
      const double a = std::abs(v);
      min_mod = std::min(min_mod, a);
      max_mod = std::max(max_mod, a);
      if (a == 0.0) return;
      sum += zeta * d / v;
    }
  };
  auto check_guard = [&] {
    if (!(min_mod >= contour.min_modulus_guard * max_mod) || min_mod == 0.0) {
      throw Error(ErrorCode::zero_near_contour,
                  "zero near contour: min|f| = " + format_double(min_mod) + " on |zeta| = " +
                      format_double(R));
    }
  };

  std::size_t m = contour.samples;
  add_samples(m, 0, 1);
  check_guard();
  if (f.truncation_bound) {
    const double tb = f.truncation_bound(R);
    if (!(tb < 0.5 * min_mod)) {
      throw Error(ErrorCode::truncation_insufficient,
                  "truncation insufficient: tail " + format_double(tb) +
                      " is not below half of min|f| = " + format_double(min_mod));
    }
  }
  long previous = std::numeric_limits<long>::min();
  for (int level = 0; level <= contour.refinement_limit; ++level) {
    if (level > 0) {
      m *= 2;
      add_samples(m, 1, 2);
      check_guard();
    }
    const double w = sum.real() / static_cast<double>(m);
    const long k = std::lround(w);
    const bool near = std::abs(w - static_cast<double>(k)) < 0.05;
    if (near && k == previous) return static_cast<int>(k);
    previous = near ? k : std::numeric_limits<long>::min();
  }
  throw Error(ErrorCode::zero_near_contour,
              "zero near contour: winding number did not stabilize on |zeta| = " +
                  format_double(R));
}

int count_zeros(const KernelSeries& k, const ContourSpec& contour) {
  ContourFunction f;
  f.analyticity_radius = k.domain_radius;
  f.value_and_derivative = [&k](cdouble z, cdouble& v, cdouble& d) { eval_truncated(k, z, v, d); };
  f.truncation_bound = [&k](double r) { return series_tail_bound(k, r); };
  return count_zeros(f, contour);
}

int count_zeros(const StarKernelClosedForm& f, double alpha, const ContourSpec& contour) {
  // The pole factor (1 - zeta)^-s has no zeros in the disk.
  const auto c = f.level() == 0 ? std::vector<double>{1.0} : f.numerator.coefficients_at(alpha);
  return count_zeros(polynomial_contour(complexify(c), 1.0), contour);
}

ContourFunction kernel_contour_function(const RadialWeight& w, double radius,
                                        const ZeroConfig& cfg) {
  const double analyticity = w.domain() == Domain::disk ? 1.0 : kInf;
  if (has_closed_form(w) && !cfg.force_series) {
    return polynomial_contour(closed_form_numerator(w), analyticity);
  }
  auto k = std::make_shared<KernelSeries>(
      kernel_series_for_radius(w, radius, 1e-15, cfg.quad, cfg.kernel));
  ContourFunction f;
  f.analyticity_radius = k->domain_radius;
  f.value_and_derivative = [k](cdouble z, cdouble& v, cdouble& d) { eval_truncated(*k, z, v, d); };
  f.truncation_bound = [k](double r) { return series_tail_bound(*k, r); };
  return f;
}

ZeroReport zeros_of_Bz(const RadialWeight& w, cdouble z, const ZeroConfig& cfg) {
  cfg.contour.validate();
  const bool disk = w.domain() == Domain::disk;
  const double key = disk ? 1.0 : cfg.plane_search_radius;
  if (disk && std::abs(z) >= 1.0) {
    throw Error(ErrorCode::outside_domain, "outside domain: |z| = " + format_double(std::abs(z)));
  }
  if (z == 0.0) {
    ZeroReport rep = empty_report(key);
    rep.diagnostic = "B_0 is the nonzero constant 1/omega_0";
    return rep;
  }
  // Zeros of xi -> B(conj(z) xi) in |xi| < key are zeros of B in |zeta| < rho.
  const double rho = std::abs(z) * key;
  const double reach = rho + cfg.perturbation_step * cfg.max_perturbations;
  const double build_radius = disk ? std::min(reach, 0.5 * (rho + 1.0)) : reach;
  const ContourFunction f = kernel_contour_function(w, build_radius, cfg);

  ZeroReport rep;
  rep.method = ZeroMethod::argument_principle;
  bool counted = false;
  int count = 0;
  double used_radius = rho;
  std::string last_error;
  for (int k = 0; k <= cfg.max_perturbations && !counted; ++k) {
    for (int sign : {1, -1}) {
      if (k == 0 && sign < 0) continue;
      const double r = rho + sign * k * cfg.perturbation_step;
      if (r <= 0.0 || r >= f.analyticity_radius) continue;
      ContourSpec spec = cfg.contour;
      spec.radius = r;
      try {
        count = count_zeros(f, spec);
        counted = true;
        used_radius = r;
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::zero_near_contour) throw;
        last_error = e.what();
      }
    }
  }

  // Locate the roots in zeta.
  std::vector<cdouble> zeta_roots;
  std::vector<double> residuals;
  bool roots_ok = true;
  if (has_closed_form(w) && !cfg.force_series) {
    const auto c = closed_form_numerator(w);
    if (c.size() > 1) {
      const ZeroReport pr = poly_roots(c);
      roots_ok = pr.certified;
      for (const auto& root : pr.roots) {
        zeta_roots.push_back(root.value);
        residuals.push_back(root.residual);
      }
    }
  } else if (!counted || count > 0) {
    const KernelSeries k = kernel_series_for_radius(w, build_radius, 1e-15, cfg.quad, cfg.kernel);
    std::vector<cdouble> c(k.coefficients.begin(), k.coefficients.end());
    const ZeroReport pr = poly_roots(c);
    for (const auto& root : pr.roots) {
      if (std::abs(root.value) >= build_radius) continue;
      zeta_roots.push_back(root.value);
      residuals.push_back(root.residual);
    }
  }
  const cdouble zbar = std::conj(z);
  for (std::size_t i = 0; i < zeta_roots.size(); ++i) {
    if (std::abs(zeta_roots[i]) >= used_radius) continue;
    rep.roots.push_back({zeta_roots[i] / zbar, residuals[i], 1});
  }
  assign_multiplicities(rep.roots);

  if (counted) {
    rep.count_in_radius[key] = count;
    rep.certified = roots_ok && count == static_cast<int>(rep.roots.size());
    if (used_radius != rho) {
      rep.diagnostic = "contour perturbed to |zeta| = " + format_double(used_radius);
    }
    if (count != static_cast<int>(rep.roots.size())) {
      rep.diagnostic += (rep.diagnostic.empty() ? "" : "; ") +
                        std::string("located roots disagree with the winding count");
    }
  } else {
    // Best effort: the winding number without the modulus guard. Rounding is
    // usually far below min|f| even when certification fails.
    ContourSpec loose = cfg.contour;
    loose.radius = rho;
    loose.min_modulus_guard = 0.0;
    loose.refinement_limit = std::min(loose.refinement_limit, 6);
    rep.certified = false;
    rep.diagnostic = "uncertified: " + last_error;
    try {
      rep.count_in_radius[key] = count_zeros(f, loose);
    } catch (const Error&) {
      rep.method = ZeroMethod::iterative_simultaneous;
      rep.count_in_radius[key] = static_cast<int>(rep.roots.size());
    }
  }
  return rep;
}

double largest_zero_modulus(int n, double alpha) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "largest_zero_modulus needs n >= 1");
  const ZeroReport rep = poly_roots(p_n(n).coefficients_at(alpha));
  const double m = rep.max_modulus();
  if (!(m < 1.0)) {
    throw Error(ErrorCode::roots_not_all_inside_disk,
                "roots not all inside disk: largest root modulus " + format_double(m) +
                    " for n = " + std::to_string(n) + ", alpha = " + format_double(alpha));
  }
  return m;
}

double zero_free_radius(const RadialWeight& w, const ZeroConfig& cfg) {
  if (w.domain() != Domain::disk) {
    throw Error(ErrorCode::invalid_argument, "zero_free_radius is defined for disk weights only");
  }
  constexpr double kGrid = 1e-4;
  KernelSeries k = kernel_series(w, 64, cfg.quad);
  const double a0 = k.coefficients.front();
  // sum_{n>=1} a_n r^n plus the certified tail; infinite when not certifiable.
  auto bound = [&](double r) {
    while (true) {
      const double tail = series_tail_bound(k, r);
      if (std::isfinite(tail) && tail <= 1e-6 * a0) {
        double s = 0.0;
        for (std::size_t i = k.coefficients.size(); i-- > 1;) s = (s + k.coefficients[i]) * r;
        return s + tail;
      }
      if (k.truncation() * 2 > cfg.kernel.max_truncation) return kInf;
      k = kernel_series(w, k.truncation() * 2, cfg.quad);
    }
  };
  const double b_first = bound(kGrid);
  if (!std::isfinite(b_first)) {
    throw Error(ErrorCode::tail_not_certifiable,
                "tail not certifiable: coefficient ratio test fails at r = 1e-4");
  }
  if (!(b_first < a0)) {
    double lo = 0.0;
    double hi = kGrid;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (bound(mid) < a0 ? lo : hi) = mid;
    }
    return lo;
  }
  long lo = 1;
  long hi = 10000;
  while (hi - lo > 1) {
    const long mid = (lo + hi) / 2;
    (bound(static_cast<double>(mid) * kGrid) < a0 ? lo : hi) = mid;
  }
  return static_cast<double>(lo) * kGrid;
}

std::vector<std::pair<double, int>> zero_map(const RadialWeight& w,
                                             const std::vector<double>& radii,
                                             const ZeroConfig& cfg, unsigned workers) {
  const bool disk = w.domain() == Domain::disk;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (!(r > 0.0) || (disk && !(r < 1.0)) || !std::isfinite(r)) {
      throw Error(ErrorCode::invalid_argument, "zero_map radius out of range: " + format_double(r));
    }
    if (i > 0 && !(r > radii[i - 1])) {
      throw Error(ErrorCode::invalid_argument, "zero_map radii must be strictly increasing");
    }
  }
  std::vector<std::pair<double, int>> out(radii.size());
  std::vector<std::exception_ptr> errors(radii.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < radii.size(); i = next++) {
      try {
        const ZeroReport rep = zeros_of_Bz(w, cdouble(radii[i], 0.0), cfg);
        out[i] = {radii[i], rep.count_in_radius.begin()->second};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(radii.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<double> pair_vanishing_residuals(const RadialWeight& w, cdouble z0, cdouble xi0,
                                             const std::vector<cdouble>& ws,
                                             const QuadratureConfig& cfg) {
  const double scale = std::abs(kernel_value(w, std::abs(std::conj(z0) * xi0), cfg));
  std::vector<double> out;
  out.reserve(ws.size());
  for (const cdouble& wv : ws) {
    if (!(std::abs(wv) > std::abs(z0))) {
      throw Error(ErrorCode::invalid_argument, "pair vanishing needs |w| > |z0|");
    }
    const cdouble eta = std::conj(z0 / wv) * xi0;
    out.push_back(std::abs(bergman_kernel(w, wv, eta, cfg)) / scale);
  }
  return out;
}

std::string to_string(ZeroMethod method) {
  switch (method) {
    case ZeroMethod::companion:
      return "companion";
    case ZeroMethod::iterative_simultaneous:
      return "iterative_simultaneous";
    case ZeroMethod::argument_principle:
      return "argument_principle";
  }
  return "unknown";
}

}  // namespace bergman
