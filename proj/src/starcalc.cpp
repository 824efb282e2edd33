#include "bergman/starcalc.hpp"

#include <cmath>
#include <mutex>
#include <utility>

#include "bergman/error.hpp"

namespace bergman {

namespace {

using ZetaPoly = std::vector<RationalPoly>;

ZetaPoly derivative(const ZetaPoly& p) {
  if (p.size() <= 1) return {};
  ZetaPoly out(p.size() - 1);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    out[k] = p[k + 1] * mpq_class(static_cast<unsigned long>(k + 1));
  }
  return out;
}

ZetaPoly times_one_minus_zeta(const ZetaPoly& p) {
  ZetaPoly out(p.size() + 1);
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k] += p[k];
    out[k + 1] -= p[k];
  }
  return out;
}

ZetaPoly times_zeta(const ZetaPoly& p) {
  ZetaPoly out(p.size() + 1);
  for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k];
  return out;
}

ZetaPoly scaled(ZetaPoly p, const RationalPoly& s) {
  for (auto& c : p) c *= s;
  return p;
}

void accumulate(ZetaPoly& acc, const ZetaPoly& term) {
  if (term.size() > acc.size()) acc.resize(term.size());
  for (std::size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
}

RationalPoly c(long v) { return RationalPoly::constant(mpq_class(v)); }

// s = 2 + alpha + 2m
RationalPoly pole_exponent_poly(int m) { return RationalPoly{mpq_class(2 + 2 * m), mpq_class(1)}; }

// Binomial series coefficients of (1 - zeta)^(-s), k = 0..N.
template <typename T>
std::vector<T> negative_binomial(const T& s, std::size_t truncation) {
  std::vector<T> b(truncation + 1);
  b[0] = T(1);
  for (std::size_t k = 1; k <= truncation; ++k) {
    const T kk = T(static_cast<double>(k));
    b[k] = b[k - 1] * (s + kk - T(1)) / kk;
  }
  return b;
}

template <>
std::vector<mpq_class> negative_binomial(const mpq_class& s, std::size_t truncation) {
  std::vector<mpq_class> b(truncation + 1);
  b[0] = 1;
  for (std::size_t k = 1; k <= truncation; ++k) {
    const mpq_class kk(static_cast<unsigned long>(k));
    b[k] = b[k - 1] * (s + kk - 1) / kk;
    b[k].canonicalize();
  }
  return b;
}

mpq_class abs_q(const mpq_class& q) { return q < 0 ? mpq_class(-q) : q; }

}  // namespace

AlphaPolynomial::AlphaPolynomial(std::vector<RationalPoly> zeta_coefficients, int level)
    : coeffs_(std::move(zeta_coefficients)), level_(level) {
  if (level_ < 0) throw Error(ErrorCode::invalid_argument, "negative level");
  coeffs_.resize(static_cast<std::size_t>(level_) + 1);
}

std::vector<mpq_class> AlphaPolynomial::coefficients_at(const mpq_class& alpha) const {
  std::vector<mpq_class> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.evaluate(alpha));
  return out;
}

std::vector<double> AlphaPolynomial::coefficients_at(double alpha) const {
  const mpq_class a(alpha);
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(to_double(c.evaluate(a)));
  return out;
}

std::complex<double> AlphaPolynomial::evaluate(double alpha, std::complex<double> zeta) const {
  const auto cs = coefficients_at(alpha);
  std::complex<double> acc = 0.0;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * zeta + *it;
  return acc;
}

std::complex<double> AlphaPolynomial::evaluate_derivative(double alpha,
                                                          std::complex<double> zeta) const {
  const auto cs = coefficients_at(alpha);
  std::complex<double> acc = 0.0;
  for (std::size_t k = cs.size(); k-- > 1;) acc = acc * zeta + static_cast<double>(k) * cs[k];
  return acc;
}

std::complex<double> StarKernelClosedForm::value(double alpha, std::complex<double> zeta) const {
  const std::complex<double> base = 1.0 - zeta;
  if (std::abs(base) == 0.0) throw Error(ErrorCode::branch_point, "branch point at zeta = 1");
  return numerator.evaluate(alpha, zeta) * std::pow(base, -pole_exponent(alpha));
}

std::complex<double> StarKernelClosedForm::derivative(double alpha,
                                                      std::complex<double> zeta) const {
  const std::complex<double> base = 1.0 - zeta;
  if (std::abs(base) == 0.0) throw Error(ErrorCode::branch_point, "branch point at zeta = 1");
  const double s = pole_exponent(alpha);
  const std::complex<double> pw = std::pow(base, -s);
  return numerator.evaluate_derivative(alpha, zeta) * pw +
         s * numerator.evaluate(alpha, zeta) * pw / base;
}

AlphaPolynomial standard_numerator() { return AlphaPolynomial({c(1)}, 0); }

AlphaPolynomial p_base() {
  // 4(2 + a) and 4(2 + a)^2
  return AlphaPolynomial({RationalPoly{8, 4}, RationalPoly{16, 16, 4}}, 1);
}

AlphaPolynomial star_step(const AlphaPolynomial& p) {
  const int m = p.level();
  const RationalPoly s = pole_exponent_poly(m);
  const ZetaPoly& q = p.coefficients();
  const ZetaPoly d1 = derivative(q);
  const ZetaPoly d2 = derivative(d1);

  ZetaPoly out;
  accumulate(out, scaled(times_one_minus_zeta(times_one_minus_zeta(d1)), c(4)));
  accumulate(out, scaled(times_one_minus_zeta(q), c(4) * s));
  accumulate(out, scaled(times_zeta(times_one_minus_zeta(times_one_minus_zeta(d2))), c(4)));
  accumulate(out, scaled(times_zeta(times_one_minus_zeta(d1)), c(8) * s));
  accumulate(out, scaled(times_zeta(q), c(4) * s * (s + c(1))));
  return AlphaPolynomial(std::move(out), m + 1);
}

AlphaPolynomial p_n(int n, int depth_cap) {
  if (n < 1 || n > depth_cap) {
    throw Error(ErrorCode::depth_cap, "depth cap: p_n needs 1 <= n <= " +
                                          std::to_string(depth_cap) + ", got " +
                                          std::to_string(n));
  }
  static std::mutex mutex;
  static std::vector<AlphaPolynomial> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (cache.empty()) cache.push_back(p_base());
  while (static_cast<int>(cache.size()) < n) cache.push_back(star_step(cache.back()));
  return cache[static_cast<std::size_t>(n - 1)];
}

StarKernelClosedForm star_kernel_closed_form(int n, int depth_cap) {
  if (n == 0) return {standard_numerator()};
  return {p_n(n, depth_cap)};
}

RationalPoly leading_coefficient_step(const AlphaPolynomial& p) {
  const int m = p.level();
  const RationalPoly s = pole_exponent_poly(m);
  const RationalPoly& top = p.coefficients().back();
  const RationalPoly bracket = c(m) - s + c(static_cast<long>(m) * (m - 1)) -
                               c(2L * m) * s + s * (s + c(1));
  return c(4) * top * bracket;
}

std::vector<mpq_class> star_coefficient_map(const std::vector<mpq_class>& a) {
  if (a.size() < 2) {
    throw Error(ErrorCode::insufficient_moments, "insufficient moments for the star map");
  }
  std::vector<mpq_class> b(a.size() - 1);
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    const mpq_class t(static_cast<unsigned long>(k + 1));
    b[k] = 4 * t * t * a[k + 1];
  }
  return b;
}

std::vector<double> star_coefficient_map(const std::vector<double>& a) {
  if (a.size() < 2) {
    throw Error(ErrorCode::insufficient_moments, "insufficient moments for the star map");
  }
  std::vector<double> b(a.size() - 1);
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    const double t = static_cast<double>(k + 1);
    b[k] = 4.0 * t * t * a[k + 1];
  }
  return b;
}

KernelSeries series_from_closed_form(const StarKernelClosedForm& f, double alpha,
                                     std::size_t truncation) {
  if (!(alpha > -1.0)) throw Error(ErrorCode::alpha_out_of_range, "alpha out of range");
  const std::vector<double> num = f.numerator.coefficients_at(alpha);
  const std::vector<double> bin = negative_binomial(f.pole_exponent(alpha), truncation);
  std::vector<double> a(truncation + 1, 0.0);
  for (std::size_t k = 0; k <= truncation; ++k) {
    for (std::size_t j = 0; j < num.size() && j <= k; ++j) a[k] += num[j] * bin[k - j];
  }
  const RadialWeight base = RadialWeight::standard(alpha);
  const RadialWeight source =
      f.level() == 0 ? base : RadialWeight::star_iterate(base, f.level());
  return KernelSeries{std::move(a), 1.0, source};
}

std::vector<mpq_class> series_from_closed_form_exact(const StarKernelClosedForm& f,
                                                     const mpq_class& alpha,
                                                     std::size_t truncation) {
  const std::vector<mpq_class> num = f.numerator.coefficients_at(alpha);
  const mpq_class s = alpha + 2 + 2 * f.level();
  const std::vector<mpq_class> bin = negative_binomial(s, truncation);
  std::vector<mpq_class> a(truncation + 1, 0);
  for (std::size_t k = 0; k <= truncation; ++k) {
    for (std::size_t j = 0; j < num.size() && j <= k; ++j) a[k] += num[j] * bin[k - j];
    a[k].canonicalize();
  }
  return a;
}

double rouche_margin(int n, double alpha) {
  const auto cs = p_n(n).coefficients_at(mpq_class(alpha));
  mpq_class margin = abs_q(cs.back());
  for (std::size_t k = 0; k + 1 < cs.size(); ++k) margin -= abs_q(cs[k]);
  return to_double(margin);
}

double rouche_threshold(int n, const ThresholdSearch& opts) {
  p_n(n);  // validates n against the cap
  const double h = opts.resolution;
  auto confirmed = [&](double alpha) {
    if (!(rouche_margin(n, alpha) > 0.0)) return false;
    for (int j = 1; j <= opts.confirm_points; ++j) {
      if (!(rouche_margin(n, alpha + j * h) > 0.0)) return false;
    }
    return true;
  };
  // Snap up to the grid -1 + k h.
  auto snap = [&](double alpha) { return -1.0 + std::ceil((alpha + 1.0) / h) * h; };

  double fail = -1.0 + h;
  if (confirmed(fail)) return fail;

  while (true) {
    // Coarse doubling from the last known failing point.
    double step = 1.0;
    double pass = fail + step;
    while (!(rouche_margin(n, pass) > 0.0)) {
      fail = pass;
      step *= 2.0;
      pass = fail + step;
      if (pass > opts.search_limit) {
        throw Error(ErrorCode::threshold_search_exhausted,
                    "threshold search exhausted: no positive Rouche margin for n = " +
                        std::to_string(n) + " below alpha = " + std::to_string(opts.search_limit));
      }
    }
    while (pass - fail > h) {
      const double mid = 0.5 * (fail + pass);
      if (rouche_margin(n, mid) > 0.0) {
        pass = mid;
      } else {
        fail = mid;
      }
    }
    const double candidate = snap(pass);
    if (confirmed(candidate)) return candidate;
    // A negative point inside the confirmation window: restart beyond it.
    for (int j = 0; j <= opts.confirm_points; ++j) {
      if (!(rouche_margin(n, candidate + j * h) > 0.0)) fail = candidate + j * h;
    }
  }
}

}  // namespace bergman
