#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcstar/representation.hpp"

using namespace qcstar;

static CommutativeModel model(std::size_t n = 64) {
  auto g = CompactGrid::interval(0.0, 1.0, n);
  return CommutativeModel(g, SeminormFamily::lp_unit(g, 1.0));
}

static std::vector<double> lebesgue_weights(const CommutativeModel& m) {
  return m.grid().weights();
}

TEST_CASE("diagonal form: values, positivity, continuity witness") {
  auto m = model();
  auto phi = SesquilinearForm::diagonal(m, lebesgue_weights(m));
  auto x = BoundedFunction::sample(m.grid(), [](double t) { return t; });
  auto y = BoundedFunction::constant(m.grid(), complex(0.0, 1.0));
  complex expect = 0.0;
  for (std::size_t t = 0; t < m.grid().size(); ++t)
    expect += m.grid().weight(t) * x[t] * std::conj(y[t]);
  CHECK(std::abs(phi(x, y) - expect) <= 1e-14);
  CHECK(phi(x, x).real() >= 0.0);
  CHECK(phi.continuity_constant() < 1e6);
  std::vector<double> bad = lebesgue_weights(m);
  bad[3] = -0.1;
  CHECK_THROWS_AS(SesquilinearForm::diagonal(m, bad), NotPositive);
}

TEST_CASE("from_kernel: diagonal psd accepted, violations named") {
  auto m = model(8);
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(8, 8);
  for (int t = 0; t < 8; ++t) k(t, t) = 0.5 + 0.1 * t;
  auto phi = SesquilinearForm::from_kernel(m, k);
  CHECK(phi.weights()[7] == doctest::Approx(1.2));

  // a negative eigenvalue is a positivity failure
  Eigen::MatrixXcd kn = k;
  kn(2, 2) = -0.5;
  CHECK_THROWS_AS(SesquilinearForm::from_kernel(m, kn), NotPositive);

  // a psd but non-diagonal kernel fails invariance with a named triple
  Eigen::MatrixXcd ki = Eigen::MatrixXcd::Zero(8, 8);
  ki(0, 0) = ki(1, 1) = 1.0;
  ki(0, 1) = ki(1, 0) = 0.5;  // psd: eigenvalues 0.5, 1.5
  try {
    SesquilinearForm::from_kernel(m, ki);
    FAIL("expected NotInvariant");
  } catch (const NotInvariant& e) {
    CHECK(std::string(e.what()).find("(a,x,y) = (e_") != std::string::npos);
  }

  Eigen::MatrixXcd knh = Eigen::MatrixXcd::Zero(8, 8);
  knh(0, 1) = 1.0;
  CHECK_THROWS_AS(SesquilinearForm::from_kernel(m, knh), NotPositive);
}

TEST_CASE("quadratic form on the completion") {
  auto m = model();
  std::vector<double> w = lebesgue_weights(m);
  w[0] = 0.0;  // drop the singular point from the support
  auto phi = SesquilinearForm::diagonal(m, w);
  auto a = m.sample([](double t) { return std::pow(t, -0.25); });
  auto q = phi.quadratic(a);
  REQUIRE(q.has_value());
  CHECK(*q > 0.0);
  // with the singular point in the support the form diverges
  auto full = SesquilinearForm::diagonal(m, lebesgue_weights(m));
  CHECK_FALSE(full.quadratic(a).has_value());
}

TEST_CASE("GNS triple: dimensions and algebraic identities") {
  auto m = model();
  const std::size_t n = m.grid().size();
  auto full = SesquilinearForm::diagonal(m, lebesgue_weights(m));
  CHECK(gns(full).dim() == n);

  std::vector<double> half(n, 0.0);
  for (std::size_t t = 0; t < n / 2; ++t) half[t] = 1.0;
  auto phi = SesquilinearForm::diagonal(m, half);
  auto g = gns(phi);
  CHECK(g.dim() == n / 2);

  Rng rng(3);
  std::vector<complex> xv(n), yv(n);
  for (auto& c : xv) c = rng.complex_uniform();
  for (auto& c : yv) c = rng.complex_uniform();
  BoundedFunction x(std::move(xv)), y(std::move(yv));
  // <lambda(x), lambda(y)> = phi(x, y)
  complex inner = (g.lambda(y).adjoint() * g.lambda(x))(0);
  CHECK(std::abs(inner - phi(x, y)) <= 1e-12);
  // pi(x) lambda(y) = lambda(xy)
  CHECK((g.pi(x) * g.lambda(y) - g.lambda(x * y)).norm() <= 1e-12);
  // pi is a *-homomorphism on the diagonal
  CHECK((g.pi(x * y) - g.pi(x) * g.pi(y)).norm() <= 1e-12);
  CHECK((g.pi(x.conj()) - g.pi(x).adjoint()).norm() <= 1e-12);
}

TEST_CASE("extend_rep: finite on the support or rejected") {
  auto m = model();
  const std::size_t n = m.grid().size();
  std::vector<double> w(n, 0.0);
  for (std::size_t t = n / 2; t < n; ++t) w[t] = 1.0;
  auto phi = SesquilinearForm::diagonal(m, w);  // support away from t = 0
  auto g = gns(phi);
  auto a = m.sample([](double t) { return std::pow(t, -0.5); });
  auto pia = extend_rep(m, g, a);  // the singularity is off-support
  for (std::size_t i = 0; i < g.dim(); ++i)
    CHECK(pia(i, i).real() ==
          doctest::Approx(std::pow(m.grid().point(g.support[i]), -0.5)));
  // a form whose support contains the singularity rejects the element
  auto full = SesquilinearForm::diagonal(m, lebesgue_weights(m));
  CHECK_THROWS_AS(extend_rep(m, gns(full), a), UnboundedOnSupport);
}

TEST_CASE("sufficiency and faithfulness of form families") {
  auto m = model();
  const std::size_t n = m.grid().size();
  auto full = SesquilinearForm::diagonal(m, lebesgue_weights(m));
  std::vector<QuasiElement> samples = {
      m.sample([](double t) { return t; }),
      m.sample([](double t) { return 1.0 - t; }),
      m.sample([](double t) { return std::pow(t, -0.25); })};
  auto rep = sufficiency_and_faithfulness(m, {full}, samples);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].pass);
  CHECK(rep.rows[1].pass);

  // support only at t = 0: misses a sample supported away from 0
  std::vector<double> w0(n, 0.0);
  w0[0] = 1.0;
  auto point = SesquilinearForm::diagonal(m, w0);
  std::vector<QuasiElement> away = {
      m.sample([](double t) { return t; })};  // vanishes at t = 0
  auto r2 = sufficiency_and_faithfulness(m, {point}, away);
  CHECK_FALSE(r2.rows[0].pass);

  // samples equal on the union support but distinct elsewhere break
  // faithfulness
  std::vector<QuasiElement> pairch = {
      m.sample([](double t) { return t; }),
      m.sample([](double t) { return t * t; })};  // agree at t = 0 only
  auto r3 = sufficiency_and_faithfulness(m, {point}, pairch);
  CHECK_FALSE(r3.rows[1].pass);

  // an empty family is insufficient for any nonzero sample
  auto r4 = sufficiency_and_faithfulness(m, {}, samples);
  CHECK_FALSE(r4.rows[0].pass);
}

TEST_CASE("Thm 7.5 bounded-set continuity checks") {
  auto m = model();
  auto full = SesquilinearForm::diagonal(m, lebesgue_weights(m));
  auto rep = bounded_continuity_check(m, {full});
  REQUIRE(rep.rows.size() == 3);
  for (const auto& r : rep.rows) {
    INFO(r.suite << "/" << r.check);
    CHECK(r.pass);
  }
  // a form with empty support cannot yield an admissible image family
  auto empty = SesquilinearForm::diagonal(
      m, std::vector<double>(m.grid().size(), 0.0));
  auto r2 = bounded_continuity_check(m, {empty});
  bool admissible_row_failed = false;
  for (const auto& r : r2.rows)
    if (r.check == "B_phi-admissible" && !r.pass) admissible_row_failed = true;
  CHECK(admissible_row_failed);
}
