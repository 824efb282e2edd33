// Acceptance gate: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/checks.hpp"
#include "bergman/error.hpp"
#include "bergman/kernels.hpp"
#include "bergman/plane.hpp"
#include "bergman/starcalc.hpp"
#include "bergman/weights.hpp"
#include "bergman/zeros.hpp"

using namespace bergman;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << "exception: " << e.what();
  }
  if (!v.pass) ++failures;
  std::printf("[%s] %2d %s :: %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(),
              v.detail.str().c_str());
  std::fflush(stdout);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// log of n! Gamma(alpha+2) / Gamma(n+alpha+2), an independent oracle.
double beta_moment(std::size_t n, double alpha) {
  return std::exp(std::lgamma(n + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(n + alpha + 2.0));
}

int zero_count(const RadialWeight& w, double r) {
  return zeros_of_Bz(w, cdouble(r, 0.0)).count_in_radius.begin()->second;
}

}  // namespace

int main() {
  run(1, "moment closed forms", [](Verdict& v) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double alpha : {0.0, 1.0, 2.5, 7.0}) {
      const RadialWeight w = RadialWeight::standard(alpha);
      for (std::size_t n = 0; n <= 64; ++n) {
        const double e = rel(quadrature_moment(w, n), beta_moment(n, alpha));
        worst = std::max(worst, e);
        v.require(e <= 1e-10, "alpha=" + std::to_string(alpha) + " n=" + std::to_string(n));
      }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
    v.detail << "max rel err " << worst << ", runtime " << secs << " s";
  });

  run(2, "star moment relation", [](Verdict& v) {
    double worst = 0.0;
    for (double alpha : {0.0, 1.0, 2.5}) {
      const RadialWeight w = RadialWeight::standard(alpha);
      const RadialWeight ws = star(w);
      for (std::size_t n = 0; n <= 16; ++n) {
        const double k = static_cast<double>(n + 1);
        const double expected = beta_moment(n + 1, alpha) / (4.0 * k * k);
        const double e = rel(quadrature_moment(ws, n), expected);
        worst = std::max(worst, e);
        v.require(e <= 1e-8, "alpha=" + std::to_string(alpha) + " n=" + std::to_string(n));
      }
    }
    v.detail << "max rel err " << worst;
  });

  run(3, "first star iterate kernel and its zero", [](Verdict& v) {
    double worst_series = 0.0;
    double worst_flip = 0.0;
    for (double alpha : {0.0, 1.0, 10.0}) {
      const RadialWeight w = star(RadialWeight::standard(alpha));
      const KernelSeries k = kernel_series_for_radius(w, 0.9, 1e-16);
      for (int i = 0; i <= 9; ++i) {
        for (int j = 0; j < 32; ++j) {
          const cdouble zeta = std::polar(0.1 * i, 2.0 * M_PI * j / 32.0);
          const cdouble exact = 4.0 * (2.0 + alpha) * (1.0 + (2.0 + alpha) * zeta) /
                                std::pow(1.0 - zeta, 4.0 + alpha);
          const EvalResult r = eval(k, zeta, 1e-14);
          // Scale-relative: cancellation near the zero caps the attainable
          // accuracy at the size of the summed terms.
          const double e = std::abs(r.value - exact) / r.abs_sum;
          worst_series = std::max(worst_series, e);
          v.require(e <= 1e-9, "series alpha=" + std::to_string(alpha));
        }
      }
      double lo = 0.01;
      double hi = 0.99;
      v.require(zero_count(w, lo) == 0 && zero_count(w, hi) == 1, "flip endpoints");
      while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (zero_count(w, mid) == 0 ? lo : hi) = mid;
      }
      const double flip = 1.0 / (2.0 + alpha);
      const double e = std::max(std::abs(lo - flip), std::abs(hi - flip));
      worst_flip = std::max(worst_flip, e);
      v.require(lo <= flip + 1e-12 && hi >= flip - 1e-12 && e <= 1e-6,
                "flip bracket alpha=" + std::to_string(alpha));
    }
    v.detail << "series max scaled err " << worst_series << ", flip bracket err " << worst_flip;
  });

  run(4, "second star iterate at alpha = 0", [](Verdict& v) {
    const auto c = p_n(2).coefficients_at(mpq_class(0));
    v.require(c.size() == 3, "degree");
    v.require(c[0] * 3 == c[2] && c[0] * 6 == c[1], "proportional to 3z^2 + 6z + 1");
    const ZeroReport rep = poly_roots(std::vector<double>{1.0, 6.0, 3.0});
    const double r1 = -1.0 + std::sqrt(6.0) / 3.0;
    const double r2 = -1.0 - std::sqrt(6.0) / 3.0;
    double e = 1.0;
    if (rep.roots.size() == 2) {
      auto a = rep.roots[0].value;
      auto b = rep.roots[1].value;
      if (a.real() < b.real()) std::swap(a, b);
      e = std::max(std::abs(a - r1), std::abs(b - r2));
    }
    v.require(e <= 1e-12, "roots");
    v.require(rep.count_within(1.0) == 1, "one root in disk");
    bool flagged = false;
    try {
      largest_zero_modulus(2, 0.0);
    } catch (const Error& err) {
      flagged = err.code() == ErrorCode::roots_not_all_inside_disk;
    }
    v.require(flagged, "largest_zero_modulus(2, 0) must report roots outside the disk");
    v.detail << "root err " << e << ", in-disk count " << rep.count_within(1.0);
  });

  run(5, "exact degree pattern of the numerators", [](Verdict& v) {
    for (int n = 1; n <= 6; ++n) {
      const AlphaPolynomial p = p_n(n);
      v.require(p.coefficient(n).degree() == 2 * n, "leading degree n=" + std::to_string(n));
      for (int k = 0; k < n; ++k) {
        v.require(p.coefficient(k).degree() <= 2 * n - 1,
                  "degree n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
    }
    v.detail << "n = 1..6 checked on exact rational polynomials";
  });

  run(6, "dominance threshold construction", [](Verdict& v) {
    for (int n = 2; n <= 5; ++n) {
      const double threshold = rouche_threshold(n);
      v.require(std::isfinite(threshold), "finite threshold");
      const double alpha = threshold + 1.0;
      const auto c = p_n(n).coefficients_at(alpha);
      const ZeroReport rep = poly_roots(c);
      v.require(rep.count_within(1.0) == n, "poly_roots count n=" + std::to_string(n));
      ContourSpec spec;
      spec.radius = 0.999;
      const int winding = count_zeros(star_kernel_closed_form(n), alpha, spec);
      v.require(winding == n, "argument principle n=" + std::to_string(n));
      const double zn = largest_zero_modulus(n, alpha);
      const RadialWeight w = RadialWeight::star_iterate(RadialWeight::standard(alpha), n);
      const int count = zero_count(w, 0.5 * (zn + 1.0));
      v.require(count == n, "zeros_of_Bz n=" + std::to_string(n));
      v.detail << "n=" << n << " alpha*=" << threshold << " |zeta_n|=" << zn << "; ";
    }
  });

  run(7, "kernel zero structure suite", [](Verdict& v) {
    const std::vector<RadialWeight> disk = {
        RadialWeight::standard(0.0),
        RadialWeight::standard(2.5),
        star(RadialWeight::standard(0.0)),
        star(RadialWeight::standard(1.0)),
        RadialWeight::star_iterate(RadialWeight::standard(0.0), 2),
        RadialWeight::star_iterate(RadialWeight::standard(rouche_threshold(3) + 1.0), 3),
    };
    const std::vector<RadialWeight> plane = {
        RadialWeight::gaussian(1.0),
        star(RadialWeight::gaussian(1.0)),
        RadialWeight::star_iterate(RadialWeight::gaussian(2.0), 3),
    };
    // (2) constant kernel at z = 0.
    for (const auto& w : disk) {
      const ZeroReport rep = zeros_of_Bz(w, 0.0);
      v.require(rep.roots.empty() && rep.count_in_radius.begin()->second == 0, "B_0 zero-free");
      v.require(rel(kernel_value(w, 0.0).real(), 1.0 / moment(w, 0)) <= 1e-12, "B_0 = 1/omega_0");
    }
    // (3) certified zero-free radius.
    const double r0 = zero_free_radius(star(RadialWeight::standard(0.0)));
    v.require(r0 > 0.0 && r0 <= 0.5, "zero_free_radius in (0, 0.5]");
    // (4) monotone zero maps.
    std::vector<double> radii;
    for (int i = 1; i <= 19; ++i) radii.push_back(0.05 * i);
    for (const auto& w : disk) {
      const auto table = zero_map(w, radii, {}, 4);
      for (std::size_t i = 1; i < table.size(); ++i) {
        v.require(table[i].second >= table[i - 1].second, "monotone " + w.describe());
      }
    }
    std::vector<double> plane_radii;
    for (int i = 1; i <= 12; ++i) plane_radii.push_back(0.25 * i);
    for (const auto& w : plane) {
      const auto table = zero_map(w, plane_radii, {}, 4);
      for (std::size_t i = 1; i < table.size(); ++i) {
        v.require(table[i].second >= table[i - 1].second, "monotone " + w.describe());
      }
    }
    // (5) pair vanishing at 20 sampled w per zero.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    std::size_t zeros_seen = 0;
    for (const auto& w : disk) {
      const cdouble z0 = std::polar(0.95, 0.3);
      const ZeroReport rep = zeros_of_Bz(w, z0);
      for (const auto& root : rep.roots) {
        ++zeros_seen;
        std::vector<cdouble> ws;
        for (int i = 0; i < 20; ++i) {
          const double m = std::abs(z0) + (0.999 - std::abs(z0)) * (0.05 + 0.9 * u(rng));
          ws.push_back(std::polar(m, 2.0 * M_PI * u(rng)));
        }
        for (double res : pair_vanishing_residuals(w, z0, root.value, ws)) {
          worst = std::max(worst, res);
        }
      }
    }
    v.require(zeros_seen > 0 && worst <= 1e-8, "pair vanishing");
    // (6) counts finite and stable under doubling N.
    for (const auto& w : {star(RadialWeight::standard(0.0)), star(RadialWeight::standard(1.0)),
                          RadialWeight::star_iterate(RadialWeight::standard(0.0), 2)}) {
      for (double r : {0.3, 0.6, 0.75}) {
        ContourSpec spec;
        spec.radius = r;
        const int a = count_zeros(kernel_series(w, 256), spec);
        const int b = count_zeros(kernel_series(w, 512), spec);
        v.require(a == b && a >= 0 && a <= w.depth(), "doubling " + w.describe());
      }
    }
    v.detail << "zero_free_radius " << r0 << ", " << zeros_seen
             << " zeros, pair-vanishing max residual " << worst;
  });

  run(8, "reproducing property and derivative identity", [](Verdict& v) {
    const std::vector<RadialWeight> ws = {
        RadialWeight::standard(0.0), RadialWeight::standard(mpq_class(3, 2)),
        star(RadialWeight::standard(0.0)), RadialWeight::gaussian(1.0)};
    const cdouble z = std::polar(0.6, 0.7);
    double worst = 0.0;
    for (const auto& w : ws) {
      for (std::size_t k = 0; k <= 10; ++k) {
        const CheckOutcome out = reproducing_check(w, PolynomialFunction::monomial(k), z);
        worst = std::max(worst, out.rel_err);
        v.require(out.pass, "quadrature " + w.describe() + " k=" + std::to_string(k));
      }
      v.require(reproducing_exact(w, 10), "exact reduction " + w.describe());
    }
    std::mt19937_64 rng(11);
    int exact_ok = 0;
    const std::vector<RadialWeight> lp = {
        RadialWeight::standard(mpq_class(0)), RadialWeight::standard(mpq_class(5, 2)),
        star(RadialWeight::standard(mpq_class(1))), RadialWeight::gaussian(mpq_class(3, 2))};
    for (const auto& w : lp) {
      for (int trial = 0; trial < 5; ++trial) {
        const ExactPolynomial f = random_exact_polynomial(8, rng);
        const ExactPolynomial g = random_exact_polynomial(8, rng);
        const bool ok = littlewood_paley_exact(w, f, g);
        exact_ok += ok;
        v.require(ok, "derivative identity " + w.describe());
      }
    }
    v.detail << "quadrature max rel err " << worst << ", exact identity " << exact_ok << "/20";
  });

  run(9, "sharp point evaluation", [](Verdict& v) {
    double worst = 0.0;
    int skipped = 0;
    const std::vector<std::pair<RadialWeight, double>> cases = {
        {RadialWeight::standard(0.0), 0.5},      {RadialWeight::standard(1.5), 0.7},
        {star(RadialWeight::standard(0.0)), 0.3}, {RadialWeight::gaussian(1.0), 1.2},
        {star(RadialWeight::standard(0.0)), 0.8}};
    for (const auto& [w, r] : cases) {
      for (double p : {1.0, 2.0, 4.0}) {
        const CheckOutcome out = sharpness_check(w, std::polar(r, 0.4), p);
        if (out.skipped) {
          ++skipped;
          continue;
        }
        worst = std::max(worst, out.rel_err);
        v.require(out.pass, out.name);
      }
    }
    double worst_norm = 0.0;
    for (double alpha : {0.0, 1.0, 2.5, 7.0}) {
      for (double r : {0.0, 0.3, 0.9}) {
        for (double p : {1.0, 2.0, 3.5}) {
          const double got = point_eval_norm(RadialWeight::standard(alpha), std::polar(r, 1.0), p);
          const double expected = std::pow(1.0 - r * r, -(2.0 + alpha) / p);
          worst_norm = std::max(worst_norm, rel(got, expected));
        }
      }
    }
    v.require(worst_norm <= 1e-12, "point_eval_norm");
    v.detail << "quadrature max rel err " << worst << " (" << skipped
             << " skipped, kernel has zeros), norm max rel err " << worst_norm;
  });

  run(10, "Gaussian weights and their iterates", [](Verdict& v) {
    for (const mpq_class gamma : {mpq_class(1), mpq_class(3, 2), mpq_class(2, 7)}) {
      const RadialWeight w = RadialWeight::gaussian(gamma);
      mpq_class expected = 1;
      for (std::size_t n = 0; n <= 20; ++n) {
        if (n > 0) expected = expected * static_cast<unsigned long>(n) / gamma;
        v.require(exact_moment(w, n) == expected, "exact moment");
      }
    }
    for (int n = 1; n <= 8; ++n) {
      for (double gamma : {0.5, 1.0, 2.0}) {
        const ExpKernelClosedForm f = sb_star_iterate(gamma, n);
        v.require(static_cast<int>(f.polynomial.size()) == n + 1 && f.polynomial.back() != 0,
                  "degree n=" + std::to_string(n));
        const ZeroReport rep = sb_zeros(gamma, n);
        v.require(static_cast<int>(rep.roots.size()) == n &&
                      rep.count_in_radius.begin()->second == n,
                  "zero count n=" + std::to_string(n));
      }
    }
    for (int n = 0; n <= 5; ++n) {
      const mpq_class gamma(3, 2);
      std::vector<mpq_class> a(64 + n);
      a[0] = 1;
      for (std::size_t k = 1; k < a.size(); ++k) a[k] = a[k - 1] * gamma / static_cast<unsigned long>(k);
      for (int i = 0; i < n; ++i) a = star_coefficient_map(a);
      a.resize(64);
      const auto taylor =
          sb_taylor_coefficients_exact(sb_star_iterate(Parameter::from_rational(gamma), n), 63);
      v.require(taylor == a, "Taylor coefficients n=" + std::to_string(n));
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int checked = 0;
    double tightest = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
      const PolynomialFunction f = PolynomialFunction::random(trial % 6, rng);
      const cdouble z(u(rng), u(rng));
      for (double p : {1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
        const CheckOutcome out = sb_point_eval_bound(1.0, z, p, f);
        ++checked;
        tightest = std::max(tightest, std::abs(out.lhs) / std::abs(out.rhs));
        v.require(out.pass, out.name);
      }
    }
    v.detail << checked << " bound checks, largest lhs/rhs " << tightest;
  });

  run(11, "Hardy ratio with eta = (1 - r^2)^-1", [](Verdict& v) {
    PolynomialFunction f = PolynomialFunction::monomial(1);
    double prev = 0.0;
    double last = 0.0;
    for (double R : {0.9, 0.99, 0.999}) {
      last = hardy_ratio(f, 2.0, R, -1.0);
      v.require(last > prev, "monotone");
      v.detail << "R=" << R << " ratio=" << last << "; ";
      prev = last;
    }
    v.require(std::abs(last - 1.0) <= 1e-3, "within 1e-3 of 1 at R = 0.999");
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
