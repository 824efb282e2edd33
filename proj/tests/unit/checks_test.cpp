#include <cmath>
#include <random>

#include "bergman/checks.hpp"
#include "bergman/kernels.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

PolynomialFunction poly(std::vector<cdouble> c) { return PolynomialFunction{std::move(c)}; }

// 1 - t / (-log(1 - t)) with t = R^2: closed form of the ratio for f = zeta,
// p = 2 and eta = 1 / (1 - r^2).
double hardy_oracle(double R) {
  const double t = R * R;
  return 1.0 - t / -std::log1p(-t);
}

}  // namespace

TEST_CASE("inner products") {
  const auto w = RadialWeight::standard(0.0);
  const auto z1 = PolynomialFunction::monomial(1);
  const auto one = PolynomialFunction::monomial(0);
  CHECK(test::rel(inner_product(z1, z1, w), cdouble(0.5)) < 1e-15);
  CHECK(std::abs(inner_product(one, z1, w)) == 0.0);
  CHECK(test::rel(inner_product_quadrature(z1, z1, w), cdouble(0.5)) < 1e-10);
  CHECK(std::abs(inner_product_quadrature(one, z1, star(RadialWeight::standard(1.0)))) < 1e-12);
  std::mt19937_64 rng(9);
  for (const auto& wt : {RadialWeight::standard(1.5), star(RadialWeight::standard(0.0)),
                         RadialWeight::gaussian(1.0)}) {
    const auto f = PolynomialFunction::random(5, rng);
    const auto g = PolynomialFunction::random(5, rng);
    const auto out = inner_product_check(f, g, wt);
    CHECK(out.pass);
    // Hermitian symmetry.
    CHECK(test::rel(inner_product(f, g, wt), std::conj(inner_product(g, f, wt))) < 1e-14);
  }
}

TEST_CASE("reproducing property") {
  const auto w1 = RadialWeight::standard(1.0);
  const auto c = reproducing_check(w1, PolynomialFunction::monomial(0), {0.3, -0.2});
  CHECK(c.pass);
  CHECK(test::rel(c.rhs, cdouble(1.0)) < 1e-14);

  const auto cube = reproducing_check(w1, PolynomialFunction::monomial(3), 0.5);
  CHECK(cube.pass);
  CHECK(std::abs(cube.lhs - cdouble(0.125)) < 1e-8);

  std::mt19937_64 rng(17);
  const auto f = PolynomialFunction::random(8, rng);
  const auto w = RadialWeight::star_iterate(RadialWeight::standard(0.0), 2);
  const cdouble z(0.3, 0.4);
  const auto r = reproducing_check(w, f, z);
  CHECK(r.pass);
  CHECK(test::rel(r.lhs, f(z)) < 1e-8);
  CHECK(test::rel(reproducing_reduction(w, f, z), f(z)) < 1e-13);
  CHECK(reproducing_exact(w, 12));
  CHECK(reproducing_exact(RadialWeight::gaussian(mpq_class(3, 2)), 12));
}

TEST_CASE("Littlewood-Paley identity") {
  const auto w0 = RadialWeight::standard(0.0);
  const auto one = PolynomialFunction::monomial(0);
  const auto z1 = PolynomialFunction::monomial(1);
  const auto c1 = littlewood_paley_check(w0, one, one);
  CHECK(c1.pass);
  CHECK(test::rel(c1.lhs, cdouble(1.0)) < 1e-15);
  const auto cz = littlewood_paley_check(w0, z1, z1);
  CHECK(test::rel(cz.lhs, cdouble(0.5)) < 1e-15);
  CHECK(test::rel(cz.rhs, cdouble(0.5)) < 1e-15);

  std::mt19937_64 rng(21);
  for (const auto& w : {RadialWeight::standard(mpq_class(1, 2)), RadialWeight::gaussian(mpq_class(2)),
                        RadialWeight::star_iterate(RadialWeight::standard(mpq_class(0)), 2)}) {
    const auto f = PolynomialFunction::random(6, rng);
    const auto g = PolynomialFunction::random(6, rng);
    CHECK(littlewood_paley_check(w, f, g).pass);
    // Every moment of a depth-2 iterate is a doubly nested integral; skip it here.
    if (w.depth() < 2) CHECK(littlewood_paley_check(w, f, g, {}, MomentRoute::quadrature, 1e-8).pass);
    CHECK(littlewood_paley_exact(w, random_exact_polynomial(7, rng), random_exact_polynomial(7, rng)));
  }
  const auto s1 = star(RadialWeight::standard(1.0));
  const auto f = PolynomialFunction::random(5, rng);
  CHECK(littlewood_paley_check(s1, f, f, {}, MomentRoute::quadrature, 1e-8).pass);
}

TEST_CASE("sharpness") {
  const auto w0 = RadialWeight::standard(0.0);
  const auto c4 = sharpness_check(w0, 0.6, 4.0);
  CHECK(c4.pass);
  CHECK(test::rel(c4.lhs, cdouble(1.25)) < 1e-6);
  CHECK(sharpness_check(RadialWeight::standard(2.0), {0.2, 0.5}, 2.0).pass);
  const auto s0 = star(w0);
  CHECK(sharpness_check(s0, {0.3, 0.2}, 3.0).pass);
  CHECK(sharpness_check(s0, 0.8, 3.0).skipped);
  const auto low = sharpness_check(w0, 0.5, 0.5);
  CHECK(low.skipped);
  CHECK_ERROR(sharpness_check(w0, 0.5, 0.0), ErrorCode::invalid_argument);
}

TEST_CASE("Hoelder bound holds for random polynomials") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (const auto& w : {RadialWeight::standard(0.0), RadialWeight::standard(3.0),
                        star(RadialWeight::standard(1.0))}) {
    for (double p : {1.0, 2.0, 4.0}) {
      const auto f = PolynomialFunction::random(8, rng);
      const auto out = hoelder_check(w, f, {u(rng), u(rng)}, p);
      CHECK(out.pass);
      CHECK(out.lhs.real() <= out.rhs.real() * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("Hardy ratio") {
  const auto one = PolynomialFunction::monomial(0);
  for (double R : {0.3, 0.9}) {
    for (double eta : {-1.0, 0.0, 2.0}) CHECK(test::rel(hardy_ratio(one, 2.0, R, eta), 1.0) < 1e-12);
  }
  const auto z1 = PolynomialFunction::monomial(1);
  double last = 0.0;
  for (double R : {0.9, 0.99, 0.999}) {
    const double v = hardy_ratio(z1, 2.0, R, -1.0);
    CHECK(test::rel(v, hardy_oracle(R)) < 1e-9);
    CHECK(v > last);
    last = v;
  }
  // eta = 0: ratio tends to the normalized A^2 norm <f, f> with the
  // unweighted area measure.
  const auto f = poly({1.0, {0.0, 2.0}, -1.0});
  CHECK(test::rel(hardy_ratio(f, 2.0, 0.999999, 0.0),
                  inner_product(f, f, RadialWeight::standard(0.0)).real()) < 1e-4);
  CHECK_ERROR(hardy_ratio(one, 2.0, 1.0, 0.0), ErrorCode::invalid_argument);
}

TEST_CASE("outcome bookkeeping") {
  const auto e = equality_outcome("e", 1.0, 1.0 + 1e-12, 1e-10);
  CHECK(e.pass);
  CHECK_FALSE(equality_outcome("e", 1.0, 2.0, 1e-10).pass);
  CHECK(bound_outcome("b", 1.0, 2.0, 0.0).pass);
  CHECK_FALSE(bound_outcome("b", 2.0, 1.0, 1e-3).pass);
  const auto s = skipped_outcome("s", "why");
  CHECK(s.skipped);
  CHECK(s.note == "why");
}
