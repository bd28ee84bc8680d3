#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcstar/operator_model.hpp"

using namespace qcstar;

static TruncatedDomain domain() {
  return TruncatedDomain(8, {1.0, 1.0, 2.0, 2.0, 4.0, 8.0, 16.0, 32.0});
}

static Vector unit(std::size_t dim, std::size_t i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

TEST_CASE("domain invariants: S >= I") {
  CHECK_THROWS_AS(TruncatedDomain(3, {1.0, 0.5, 2.0}), InvariantViolation);
  CHECK_THROWS_AS(TruncatedDomain(3, {1.0, 2.0}), InvariantViolation);
  auto d = domain();
  CHECK(d.S()(7, 7) == complex(32.0));
  CHECK(d.S_inv()(7, 7) == complex(1.0 / 32.0));
}

TEST_CASE("commutant basis agrees with the brute-force membership test") {
  auto d = domain();
  auto alg = cs_algebra(d);
  std::size_t count = 0;
  for (std::size_t i = 0; i < d.dim; ++i)
    for (std::size_t j = 0; j < d.dim; ++j) {
      Matrix e = Matrix::Zero(d.dim, d.dim);
      e(i, j) = 1.0;
      bool in = alg.contains(d, e);
      bool expect = d.s[i] == d.s[j];
      CHECK(in == expect);
      if (expect) ++count;
    }
  // pairs {0,1} and {2,3} share weights: 2 blocks of 4 plus 4 singletons
  CHECK(alg.basis_indices.size() == count);
  CHECK(count == 12);
  for (const auto& b : alg.basis(d)) CHECK(alg.contains(d, b));
}

TEST_CASE("quasi-norm oracles") {
  auto d = domain();
  // ||S^-1 I S^-1|| = max s_i^-2 = 1 because s_0 = 1
  CHECK(quasi_norm(d, OperatorElement(d, Matrix::Identity(8, 8))) ==
        doctest::Approx(1.0));
  // X = S^2 is exactly flattened to the identity
  CHECK(quasi_norm(d, OperatorElement(d, d.S() * d.S())) ==
        doctest::Approx(1.0));
  // a rank-one off-diagonal unit: ||S^-1 E_07 S^-1|| = 1/(s_0 s_7)
  Matrix e = Matrix::Zero(8, 8);
  e(0, 7) = 1.0;
  CHECK(quasi_norm(d, OperatorElement(d, e)) ==
        doctest::Approx(1.0 / 32.0));
}

TEST_CASE("seminorms (4.1)-(4.3) on singleton sets") {
  auto d = domain();
  Matrix x = Matrix::Zero(8, 8);
  x(0, 0) = 3.0;
  x(1, 0) = 4.0;
  OperatorElement X(d, x);
  std::vector<Vector> set = {unit(8, 0)};
  CHECK(eval_seminorm(X, set, SeminormKind::Weak) == doctest::Approx(3.0));
  CHECK(eval_seminorm(X, set, SeminormKind::Strong) == doctest::Approx(5.0));
  // strong* adds the adjoint column norm
  CHECK(eval_seminorm(X, set, SeminormKind::StrongStar) ==
        doctest::Approx(5.0 + 3.0));
  // for hermitian X, strong* = 2 * strong
  Matrix h = Matrix::Zero(8, 8);
  h(0, 0) = 2.0;
  h(0, 1) = complex(0.0, 1.0);
  h(1, 0) = complex(0.0, -1.0);
  OperatorElement H(d, h);
  CHECK(eval_seminorm(H, set, SeminormKind::StrongStar) ==
        doctest::Approx(2.0 * eval_seminorm(H, set, SeminormKind::Strong)));
}

TEST_CASE("admissibility: pass and all three failure clauses") {
  auto d = domain();
  auto e0 = unit(8, 0), e1 = unit(8, 1);
  Matrix swap = Matrix::Identity(8, 8);
  swap(0, 0) = swap(1, 1) = 0.0;
  swap(0, 1) = swap(1, 0) = 1.0;

  BoundedSetFamily good;
  good.sets = {{e0}, {e1}, {e0, e1}};
  auto r = admissible_check(good, {e0, e1}, {swap});
  CHECK(r.admissible);

  auto r1 = admissible_check(good, {e0, e1, unit(8, 2)}, {swap});
  CHECK_FALSE(r1.admissible);
  CHECK(r1.witness == "(i) pool vector 2");

  BoundedSetFamily no_union;
  no_union.sets = {{e0}, {e1}};
  auto r2 = admissible_check(no_union, {e0, e1}, {});
  CHECK_FALSE(r2.admissible);
  CHECK(r2.witness == "(ii) union of sets 0,1");

  BoundedSetFamily no_image;
  no_image.sets = {{e0}};
  auto r3 = admissible_check(no_image, {e0}, {swap});
  CHECK_FALSE(r3.admissible);
  CHECK(r3.witness == "(iii) generator 0 on set 0");
}

TEST_CASE("topology order relations hold on random samples") {
  auto d = domain();
  Rng rng(9);
  std::vector<OperatorElement> samples;
  for (int s = 0; s < 12; ++s) {
    Matrix m(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m(i, j) = rng.complex_uniform();
    samples.emplace_back(d, m);
  }
  BoundedSetFamily fam;
  fam.sets = {{unit(8, 0)}, {unit(8, 1)}, {unit(8, 0), unit(8, 1)},
              {unit(8, 0), unit(8, 1), unit(8, 4)}};
  auto rep = topology_order_check(d, samples, fam);
  REQUIRE(rep.rows.size() == 4);
  for (const auto& r : rep.rows) {
    INFO(r.suite << "/" << r.check << " witness=" << r.witness);
    CHECK(r.pass);
  }
}

TEST_CASE("Prop 4.3 chain and the spectral reconstruction") {
  auto d = domain();
  Rng rng(13);
  Matrix h(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) h(i, j) = rng.complex_uniform();
  Matrix a = h * h.adjoint();  // psd
  auto rep = prop43_check(d, OperatorElement(d, a));
  REQUIRE(rep.rows.size() == 3);
  for (const auto& r : rep.rows) {
    INFO(r.check);
    CHECK(r.pass);
  }
  CHECK(rep.rows[2].residual <= 1e-9);

  // hermitian with a negative eigenvalue: the chain stops at stage (i)
  Matrix neg = Matrix::Identity(8, 8);
  neg(3, 3) = -1.0;
  auto rn = prop43_check(d, OperatorElement(d, neg));
  REQUIRE(rn.rows.size() == 1);
  CHECK_FALSE(rn.rows[0].pass);
  CHECK(rn.rows[0].witness == "negative eigenvalue");

  Matrix nh = Matrix::Zero(8, 8);
  nh(0, 1) = 1.0;
  auto rh = prop43_check(d, OperatorElement(d, nh));
  REQUIRE(rh.rows.size() == 1);
  CHECK(rh.rows[0].witness == "not hermitian");
}

TEST_CASE("physical seminorm: values and F-class guards") {
  auto d = domain();
  OperatorElement I(d, Matrix::Identity(8, 8));
  auto f = ScalarFunction::exp_neg(1.0);
  CHECK(physical_seminorm(d, I, f) == doctest::Approx(std::exp(-1.0)));
  // unbounded f is rejected
  CHECK_THROWS_AS(physical_seminorm(d, I, ScalarFunction::identity()),
                  FClassViolation);
  // insufficient declared decay order
  CHECK_THROWS_AS(physical_seminorm(d, I, ScalarFunction::resolvent_power(1.0),
                                    2.0),
                  FClassViolation);
  // f negative on the spectrum
  CHECK_THROWS_AS(physical_seminorm(d, I, ScalarFunction::poly({-1.0})),
                  FClassViolation);

  std::vector<std::pair<OperatorElement, OperatorElement>> pairs;
  Rng rng(21);
  auto alg = cs_algebra(d);
  auto basis = alg.basis(d);
  for (int k = 0; k < 16; ++k) {
    Matrix x = Matrix::Zero(8, 8), y = Matrix::Zero(8, 8);
    for (const auto& b : basis) {
      x += rng.complex_uniform() * b;
      y += rng.complex_uniform() * b;
    }
    pairs.emplace_back(OperatorElement(d, x), OperatorElement(d, y));
  }
  auto rep = physical_inequality_check(d, f, pairs);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].pass);
}

TEST_CASE("MASA bridge: diag(4,9) has root diag(2,3)") {
  TruncatedDomain d(2, {1.0, 1.0});
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 4.0;
  a(1, 1) = 9.0;
  auto b = maximal_commutative(d, OperatorElement(d, a));
  REQUIRE(b.model.has_value());
  REQUIRE(b.distinct.size() == 2);
  CHECK(b.distinct[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(b.distinct[1] == doctest::Approx(9.0).epsilon(1e-12));
  Matrix r = b.root(2);
  CHECK(std::abs(r(0, 0) - complex(2.0)) <= 1e-10);
  CHECK(std::abs(r(1, 1) - complex(3.0)) <= 1e-10);
  CHECK(std::abs(r(0, 1)) <= 1e-10);
  // the identity function reproduces a through the bridge
  Matrix id = b.apply(ScalarFunction::identity(), 1);
  CHECK((id - a).cwiseAbs().maxCoeff() <= 1e-10);
  // the root squares back
  CHECK((r * r - a).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("MASA bridge: non-diagonal psd element") {
  TruncatedDomain d(2, {1.0, 1.0});
  Matrix a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;  // eigenvalues 1 and 3
  auto b = maximal_commutative(d, OperatorElement(d, a));
  REQUIRE(b.model.has_value());
  Matrix r = b.root(2);
  CHECK(is_psd(r, 1e-10));
  CHECK((r * r - a).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("MASA bridge: degenerate spectrum falls back to a point space") {
  TruncatedDomain d(3, {1.0, 1.0, 1.0});
  Matrix a = 4.0 * Matrix::Identity(3, 3);
  auto b = maximal_commutative(d, OperatorElement(d, a));
  CHECK_FALSE(b.model.has_value());
  CHECK(b.distinct.size() == 1);
  Matrix r = b.root(2);
  CHECK((r - 2.0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("MASA bridge rejects non-psd input") {
  TruncatedDomain d(2, {1.0, 1.0});
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = -1.0;
  CHECK_THROWS_AS(maximal_commutative(d, OperatorElement(d, a)),
                  NotQuasiPositive);
}
