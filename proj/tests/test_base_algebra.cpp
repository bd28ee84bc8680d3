#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcstar/base_algebra.hpp"
#include "qcstar/scalar_function.hpp"

using namespace qcstar;

static CompactGrid grid() { return CompactGrid::interval(0.0, 1.0, 128); }

TEST_CASE("sup norm and C*-identity") {
  auto g = grid();
  auto x = BoundedFunction::sample(g, [](double t) { return t - 0.25; });
  CHECK(sup_norm(x) == doctest::Approx(0.75));
  // |x* x|_0 = |x|_0^2 on a commutative C*-algebra
  CHECK(sup_norm(x.conj() * x) == doctest::Approx(sup_norm(x) * sup_norm(x)));
}

TEST_CASE("hermitian decomposition") {
  auto g = grid();
  auto x = BoundedFunction::sample(g, [](double t) { return t - 0.5; });
  auto parts = decompose_hermitian(x);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(parts.plus[i].real() >= 0.0);
    CHECK(parts.minus[i].real() >= 0.0);
    CHECK(parts.plus[i].real() * parts.minus[i].real() == 0.0);
    CHECK(parts.abs[i].real() ==
          doctest::Approx(std::abs(x[i].real())).epsilon(1e-15));
  }
  auto y = BoundedFunction::constant(g, complex(0.0, 1.0));
  CHECK_THROWS_AS(decompose_hermitian(y), NonHermitian);
}

TEST_CASE("positivity classification") {
  auto g = grid();
  CHECK(is_positive(BoundedFunction::sample(g, [](double t) { return t; })));
  CHECK_FALSE(is_positive(
      BoundedFunction::sample(g, [](double t) { return t - 0.5; })));
  CHECK_FALSE(is_positive(BoundedFunction::constant(g, complex(0.0, 1.0))));
}

TEST_CASE("continuous calculus: pointwise with roundoff clamp") {
  auto g = grid();
  auto x = BoundedFunction::sample(g, [](double t) { return t; });
  auto r = continuous_calculus(x, ScalarFunction::power(0.5));
  CHECK(r[100].real() == doctest::Approx(std::sqrt(g.point(100))));
  // a tiny negative value within tolerance is treated as 0 for sqrt
  auto y = BoundedFunction::constant(g, complex(-1e-15));
  auto ry = continuous_calculus(y, ScalarFunction::power(0.5));
  CHECK(ry[0].real() == 0.0);
  auto z = BoundedFunction::constant(g, complex(-0.5));
  CHECK_THROWS_AS(continuous_calculus(z, ScalarFunction::power(0.5)),
                  DomainError);
}

TEST_CASE("scalar function catalog: values and growth") {
  auto f = ScalarFunction::pow_res(0.5, 1.0);  // l^0.5 / (1+l)
  CHECK(f.eval(4.0) == doctest::Approx(2.0 / 5.0));
  CHECK(f.growth_exponent() == doctest::Approx(-0.5));
  CHECK(f.limit_at_infinity().has_value());
  CHECK(*f.limit_at_infinity() == doctest::Approx(0.0));

  auto p = ScalarFunction::poly({1.0, 2.0, 3.0});
  CHECK(p.eval(2.0) == doctest::Approx(1.0 + 4.0 + 12.0));
  CHECK(p.growth_exponent() == doctest::Approx(2.0));
  CHECK_FALSE(p.limit_at_infinity().has_value());

  auto e = ScalarFunction::exp_neg(2.0, 3.0);
  CHECK(e.eval(1.0) == doctest::Approx(3.0 * std::exp(-2.0)));
  CHECK(e.bounded_at_infinity());
  CHECK(e.decay_order() > 100.0);

  auto t = ScalarFunction::table({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  CHECK(t.eval(0.5) == doctest::Approx(0.5));
  CHECK(t.eval(5.0) == doctest::Approx(0.0));  // clamped
  CHECK(t.growth_exponent() == 0.0);
}

TEST_CASE("scalar function: domain of definition") {
  auto f = ScalarFunction::power(0.5);
  CHECK(f.defined_at(0.0));
  CHECK_FALSE(f.defined_at(-1.0));
  CHECK_THROWS_AS(ScalarFunction::power(0.5).eval(-2.0), DomainError);
  auto g = ScalarFunction::poly({0.0, 1.0});
  CHECK(g.defined_at(-3.0));
  auto r = ScalarFunction::resolvent_power(2.0);
  CHECK_FALSE(r.defined_at(-1.0));
}

TEST_CASE("scalar function: closure under product and sum") {
  auto a = ScalarFunction::pow_res(0.5, 1.0);
  auto b = ScalarFunction::pow_res(0.25, 0.0);
  auto ab = ScalarFunction::mul(a, b);
  REQUIRE(ab.has_value());
  CHECK(ab->eval(3.0) == doctest::Approx(a.eval(3.0) * b.eval(3.0)));
  auto p1 = ScalarFunction::poly({1.0, 1.0});
  auto p2 = ScalarFunction::poly({0.0, 0.0, 1.0});
  auto p12 = ScalarFunction::mul(p1, p2);
  REQUIRE(p12.has_value());
  CHECK(p12->eval(2.0) == doctest::Approx(p1.eval(2.0) * p2.eval(2.0)));
  auto s = ScalarFunction::add(p1, p2);
  REQUIRE(s.has_value());
  CHECK(s->eval(2.0) == doctest::Approx(p1.eval(2.0) + p2.eval(2.0)));
  CHECK_FALSE(ScalarFunction::mul(a, p1).has_value());
}
