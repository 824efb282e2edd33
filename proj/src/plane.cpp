#include "bergman/plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/error.hpp"
#include "bergman/format.hpp"

namespace bergman {

namespace {

mpq_class exact_of(const Parameter& p) { return p.exact.value_or(mpq_class(p.value)); }

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::gamma_out_of_range, "gamma out of range: " + format_double(gamma));
  }
}

mpq_class pow_q(const mpq_class& x, std::size_t k) {
  mpq_class r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

// q(x) and q'(x) in double.
void eval_q(const std::vector<double>& q, cdouble x, cdouble& v, cdouble& d) {
  v = 0.0;
  d = 0.0;
  for (std::size_t i = q.size(); i-- > 0;) {
    d = d * x + v;
    v = v * x + q[i];
  }
}

std::vector<double> to_doubles(const std::vector<mpq_class>& q) {
  std::vector<double> out;
  out.reserve(q.size());
  for (const auto& c : q) out.push_back(to_double(c));
  return out;
}

cdouble checked_exp(cdouble x) {
  if (x.real() > 709.0) {
    throw Error(ErrorCode::magnitude_overflow,
                "magnitude overflow: log|B| = " + format_double(x.real()));
  }
  return std::exp(x);
}

}  // namespace

double ExpKernelClosedForm::prefactor() const { return to_double(exact_prefactor()); }

mpq_class ExpKernelClosedForm::exact_prefactor() const {
  return pow_q(4 * exact_of(gamma), static_cast<std::size_t>(level));
}

cdouble ExpKernelClosedForm::value(cdouble zeta) const {
  const cdouble x = gamma.value * zeta;
  cdouble v;
  cdouble d;
  eval_q(to_doubles(polynomial), x, v, d);
  const double log_scale = std::log(prefactor()) + x.real();
  if (log_scale > 709.0) {
    throw Error(ErrorCode::magnitude_overflow,
                "magnitude overflow: log|B| ~ " + format_double(log_scale + std::log(std::abs(v))));
  }
  return prefactor() * v * checked_exp(x);
}

cdouble ExpKernelClosedForm::derivative(cdouble zeta) const {
  const cdouble x = gamma.value * zeta;
  cdouble v;
  cdouble d;
  eval_q(to_doubles(polynomial), x, v, d);
  return prefactor() * gamma.value * (v + d) * checked_exp(x);
}

cdouble sb_kernel(double gamma, cdouble zeta) {
  require_gamma(gamma);
  return checked_exp(gamma * zeta);
}

ExpKernelClosedForm sb_star_iterate(const Parameter& gamma, int n) {
  require_gamma(gamma.value);
  if (n < 0 || n > kPlaneDepthCap) {
    throw Error(ErrorCode::depth_cap, "depth cap: plane star depth " + std::to_string(n) +
                                          " outside [0, " + std::to_string(kPlaneDepthCap) + "]");
  }
  const mpq_class g = exact_of(gamma);
  const auto nn = static_cast<std::size_t>(n);
  // n applications consume n coefficients each; keep n + 1 outputs.
  std::vector<mpq_class> a(2 * nn + 1);
  mpq_class term = 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k > 0) term = term * g / static_cast<unsigned long>(k);
    a[k] = term;
  }
  for (std::size_t i = 0; i < nn; ++i) a = star_coefficient_map(a);
  a.resize(nn + 1);
  // b_k = gamma^(n+k) / k! * r(k) with r a degree-n integer polynomial in k.
  std::vector<mpq_class> r(nn + 1);
  mpq_class fact = 1;
  for (std::size_t k = 0; k <= nn; ++k) {
    if (k > 0) fact *= static_cast<unsigned long>(k);
    r[k] = a[k] * fact / pow_q(g, nn + k);
  }
  // Newton forward differences: r(k) = sum_j Delta^j r(0) C(k, j), and
  // sum_k C(k, j) x^k / k! = x^j / j! e^x.
  std::vector<mpq_class> diff = r;
  ExpKernelClosedForm out{gamma, n, {}};
  out.polynomial.resize(nn + 1);
  const mpq_class scale = pow_q(mpq_class(4), nn);
  mpq_class jfact = 1;
  for (std::size_t j = 0; j <= nn; ++j) {
    if (j > 0) {
      jfact *= static_cast<unsigned long>(j);
      for (std::size_t k = 0; k + j <= nn; ++k) diff[k] = diff[k + 1] - diff[k];
    }
    out.polynomial[j] = diff[0] / (jfact * scale);
  }
  return out;
}

ExpKernelClosedForm sb_star_iterate(double gamma, int n) {
  return sb_star_iterate(Parameter::from_double(gamma), n);
}

std::vector<mpq_class> sb_taylor_coefficients_exact(const ExpKernelClosedForm& f,
                                                    std::size_t truncation) {
  const mpq_class g = exact_of(f.gamma);
  const mpq_class pre = f.exact_prefactor();
  std::vector<mpq_class> inv_fact(truncation + 1);
  inv_fact[0] = 1;
  for (std::size_t k = 1; k <= truncation; ++k) {
    inv_fact[k] = inv_fact[k - 1] / static_cast<unsigned long>(k);
  }
  std::vector<mpq_class> out(truncation + 1);
  mpq_class gk = 1;
  for (std::size_t k = 0; k <= truncation; ++k) {
    mpq_class s = 0;
    for (std::size_t j = 0; j < f.polynomial.size() && j <= k; ++j) {
      s += f.polynomial[j] * inv_fact[k - j];
    }
    out[k] = pre * gk * s;
    gk *= g;
  }
  return out;
}

ZeroReport sb_zeros(double gamma, int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sb_zeros needs n >= 1");
  const ExpKernelClosedForm f = sb_star_iterate(gamma, n);
  ZeroReport rep = poly_roots(to_doubles(f.polynomial));
  for (auto& root : rep.roots) root.value /= gamma;
  const double reach = std::ceil(rep.max_modulus()) + 1.0;
  rep.count_in_radius.clear();
  rep.count_in_radius[reach] = rep.count_within(reach);
  return rep;
}

double sb_norm(const PolynomialFunction& f, double gamma, double p, const QuadratureConfig& cfg) {
  require_gamma(gamma);
  if (!(p > 0.0)) throw Error(ErrorCode::invalid_argument, "norm exponent must be positive");
  if (std::isinf(p)) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto weighted = [&](double r, double t) {
      return std::abs(f(std::polar(r, t))) * std::exp(-0.5 * gamma * r * r);
    };
    const double rmax = std::sqrt((2.0 * static_cast<double>(f.degree()) + 80.0) / gamma);
    const int nr = 400;
    const int nt = 256;
    double best = 0.0;
    double br = 0.0;
    double bt = 0.0;
    for (int i = 0; i <= nr; ++i) {
      const double r = rmax * i / nr;
      for (int j = 0; j < nt; ++j) {
        const double t = two_pi * j / nt;
        const double v = weighted(r, t);
        if (v > best) {
          best = v;
          br = r;
          bt = t;
        }
      }
    }
    // Shrinking local grid around the best sample.
    double hr = rmax / nr;
    double ht = two_pi / nt;
    for (int round = 0; round < 40; ++round) {
      double cr = br;
      double ct = bt;
      for (int i = -4; i <= 4; ++i) {
        for (int j = -4; j <= 4; ++j) {
          const double r = std::max(0.0, cr + hr * i / 4.0);
          const double t = ct + ht * j / 4.0;
          const double v = weighted(r, t);
          if (v > best) {
            best = v;
            br = r;
            bt = t;
          }
        }
      }
      hr *= 0.5;
      ht *= 0.5;
    }
    return best;
  }
  const RadialWeight w = RadialWeight::gaussian(gamma * p / 2.0);
  return std::pow(lp_norm_pow(f, w, p, cfg), 1.0 / p);
}

double sb_point_eval_norm(double gamma, cdouble z) {
  require_gamma(gamma);
  return std::exp(0.5 * gamma * std::norm(z));
}

CheckOutcome sb_point_eval_bound(double gamma, cdouble z, double p, const PolynomialFunction& f,
                                 const QuadratureConfig& cfg) {
  const double rhs = sb_point_eval_norm(gamma, z) * sb_norm(f, gamma, p, cfg);
  return bound_outcome("sb_point_eval gamma=" + format_double(gamma) + " p=" + format_double(p),
                       std::abs(f(z)), rhs, 1e-9);
}

}  // namespace bergman
