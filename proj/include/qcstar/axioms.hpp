#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qcstar/quasi_model.hpp"
#include "qcstar/report.hpp"

namespace qcstar {

struct AxiomOptions {
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  // When positive, A0 is the subalgebra of grid functions with discrete
  // slope <= lipschitz_bound (stand-in for C(I) inside L^p). Zero means the
  // full algebra of grid functions (the L^p-over-L^inf model).
  double lipschitz_bound = 0.0;
};

namespace detail {

inline BoundedFunction random_element(const CommutativeModel& m, Rng& rng,
                                      bool hermitian) {
  std::vector<complex> v(m.grid().size());
  for (auto& c : v)
    c = hermitian ? complex(rng.uniform(-1.0, 1.0)) : rng.complex_uniform();
  return BoundedFunction(std::move(v));
}

inline double max_slope(const CompactGrid& g, const BoundedFunction& x) {
  double s = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i)
    s = std::max(s, std::abs(x[i] - x[i - 1]) /
                        (g.point(i) - g.point(i - 1)));
  return s;
}

// Operator norm of pointwise multiplication by a on the weighted L^p grid
// space, maximized exhaustively over basis indicator functions.
inline double multiplication_op_norm(const CommutativeModel& m,
                                     const BoundedFunction& a) {
  double best = 0.0;
  for (std::size_t t = 0; t < m.grid().size(); ++t) {
    for (std::size_t l = 0; l < m.family().size(); ++l) {
      // An indicator's quadrature has a single term, so the ratio
      // p(a e_t)/p(e_t) collapses to that term's value.
      const auto& s = m.family().spec(l);
      double mass = s.weight[t] * m.grid().weight(t);
      double num = std::pow(mass * std::pow(std::abs(a[t]), s.p), 1.0 / s.p);
      double den = std::pow(mass, 1.0 / s.p);
      if (den > 0.0) best = std::max(best, num / den);
    }
  }
  return best;
}

}  // namespace detail

// Empirical (T1)-(T4) suite over seeded random samples, plus the proper
// CQ*-algebra norm comparison and the Proposition 3.2 style cone checks.
inline AxiomReport verify_axioms(const CommutativeModel& m,
                                 const AxiomOptions& opt) {
  AxiomReport rep;
  Rng rng(opt.seed);
  const auto& grid = m.grid();
  const std::size_t n_specs = m.family().size();

  // T1: separate continuity of multiplication, p(xy) <= |x|_0 p(y).
  {
    double worst = 0.0;
    std::string witness;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      auto x = detail::random_element(m, rng, false);
      auto y = detail::random_element(m, rng, false);
      for (std::size_t l = 0; l < n_specs; ++l) {
        double gap = m.seminorm(x * y, l) - sup_norm(x) * m.seminorm(y, l);
        if (gap > worst) {
          worst = gap;
          witness = "sample " + std::to_string(s);
        }
      }
    }
    rep.add("T1", worst <= opt.tolerance, std::max(worst, 0.0),
            worst > opt.tolerance ? witness : "");
  }

  // T2: tau dominated by the C*-norm with the family's constants.
  {
    double worst = 0.0;
    std::string witness;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      auto x = detail::random_element(m, rng, false);
      for (std::size_t l = 0; l < n_specs; ++l) {
        double c = m.family().domination_constant(grid, l);
        double gap = m.seminorm(x, l) - c * sup_norm(x);
        if (gap > worst) {
          worst = gap;
          witness = "sample " + std::to_string(s);
        }
      }
    }
    rep.add("T2", worst <= opt.tolerance, std::max(worst, 0.0),
            worst > opt.tolerance ? witness : "");
  }

  // T3: p_l(xy) <= |x|_0 p_l'(y) for commuting pairs; on the commutative
  // grid model l' = l works and all pairs commute.
  {
    double worst = 0.0;
    std::string witness;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      auto x = detail::random_element(m, rng, false);
      auto y = detail::random_element(m, rng, false);
      for (std::size_t l = 0; l < n_specs; ++l) {
        double gap = m.seminorm(x * y, l) - sup_norm(x) * m.seminorm(y, l);
        if (gap > worst) {
          worst = gap;
          witness = "sample " + std::to_string(s);
        }
      }
    }
    rep.add("T3", worst <= opt.tolerance, std::max(worst, 0.0),
            worst > opt.tolerance ? witness : "");
  }

  // T4a: the positive unit ball of A0 is tau-closed. For the constrained
  // model a sequence of in-ball ramps approaches (to grid resolution) a step
  // function whose discrete slope violates the membership bound.
  {
    bool pass = true;
    double resid = 0.0;
    std::string witness;
    if (opt.lipschitz_bound > 0.0) {
      const double mid = 0.5 * (grid.point(0) + grid.point(grid.size() - 1));
      auto step = BoundedFunction::sample(
          grid, [&](double t) { return t >= mid ? 1.0 : 0.0; });
      const double L = opt.lipschitz_bound;
      auto ramp = BoundedFunction::sample(grid, [&](double t) {
        return std::clamp(0.5 + L * (t - mid), 0.0, 1.0);
      });
      bool ramp_in = detail::max_slope(grid, ramp) <= L * (1.0 + 1e-9) &&
                     is_positive(ramp) && sup_norm(ramp) <= 1.0 + 1e-12;
      double dist = m.tau_distance(ramp, step);
      bool converged = dist <= grid.spacing();  // within grid resolution
      bool limit_in = detail::max_slope(grid, step) <= L;
      if (ramp_in && converged && !limit_in) {
        pass = false;
        resid = dist;
        witness = "step-limit";
      }
    } else {
      for (std::size_t s = 0; s < 32; ++s) {
        auto target = detail::random_element(m, rng, true);
        auto y = BoundedFunction::sample(grid, [&](double t) {
          (void)t;
          return 0.0;
        });
        std::vector<complex> tv(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
          tv[i] = std::clamp(target[i].real() + 0.5, 0.0, 1.0);
        BoundedFunction limit{tv};
        double last = 0.0;
        for (int k = 1; k <= 44; ++k) {
          auto noise = detail::random_element(m, rng, true);
          auto xk = limit + std::pow(2.0, -k) * noise;
          std::vector<complex> cv(grid.size());
          for (std::size_t i = 0; i < grid.size(); ++i)
            cv[i] = std::clamp(xk[i].real(), 0.0, 1.0);
          last = m.tau_distance(BoundedFunction{cv}, limit);
        }
        bool in_ball = is_positive(limit) && sup_norm(limit) <= 1.0 + 1e-12;
        if (!in_ball || last > tol::kTauConvergence) {
          pass = false;
          resid = last;
          witness = "sample " + std::to_string(s);
          break;
        }
        (void)y;
      }
    }
    rep.add("T4a", pass, resid, witness);
  }

  // T4b: quasi-positive intersect A0 equals the positive cone, sampled in
  // both directions.
  {
    bool pass = true;
    std::string witness;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      auto x = detail::random_element(m, rng, true);
      bool qp = m.is_quasi_positive(m.embed(x));
      if (qp != is_positive(x)) {
        pass = false;
        witness = "sample " + std::to_string(s);
        break;
      }
      auto xp = decompose_hermitian(x).plus;
      if (!m.is_quasi_positive(m.embed(xp))) {
        pass = false;
        witness = "positive sample " + std::to_string(s);
        break;
      }
    }
    rep.add("T4b", pass, 0.0, witness);
  }

  // CQ* comparison: |a|_op (multiplication operator norm on the weighted
  // L^p space) against |a|_0.
  {
    double worst = 0.0;
    std::string witness;
    for (std::size_t s = 0; s < std::min<std::size_t>(opt.samples, 64); ++s) {
      auto a = detail::random_element(m, rng, false);
      double c = sup_norm(a);
      if (c == 0.0) continue;
      double gap = std::abs(detail::multiplication_op_norm(m, a) - c) / c;
      if (gap > worst) {
        worst = gap;
        witness = "sample " + std::to_string(s);
      }
    }
    rep.op_norm_max_gap = worst;
    rep.cq_norm_equal = worst <= opt.tolerance;
    rep.add("CQ*-norm", rep.cq_norm_equal, worst,
            rep.cq_norm_equal ? "" : witness);
  }

  // Cone property: elements quasi-positive together with their negative are
  // forced to vanish (checked through the regularized identity).
  {
    bool pass = true;
    double resid = 0.0;
    for (std::size_t s = 0; s < 16; ++s) {
      std::vector<ExtendedValue> v(grid.size());
      for (auto& e : v)
        e = ExtendedValue::finite(complex(rng.uniform(-1e-13, 1e-13)));
      QuasiElement a{std::move(v)};
      if (m.is_quasi_positive(a) && m.is_quasi_positive(m.scale(-1.0, a))) {
        resid = std::max(resid, a.finite_sup());
        if (a.finite_sup() > 1e-12) pass = false;
      }
    }
    rep.add("Prop3.2(3)", pass, resid);
  }

  // Dominated positivity: a quasi-positive dominated by a bounded positive
  // element is itself a bounded positive element.
  {
    bool pass = true;
    std::string witness;
    for (std::size_t s = 0; s < 64; ++s) {
      auto braw = detail::random_element(m, rng, true);
      auto b = decompose_hermitian(braw).abs;
      std::vector<complex> uv(grid.size());
      for (auto& c : uv) c = rng.uniform(0.0, 1.0);
      auto a = b * BoundedFunction{uv};
      auto aq = m.embed(a);
      bool dominated = m.is_quasi_positive(m.add(m.embed(b), m.scale(-1.0, aq)));
      if (!dominated || !m.is_quasi_positive(aq) || !is_positive(a)) {
        pass = false;
        witness = "sample " + std::to_string(s);
        break;
      }
    }
    rep.add("Prop3.2(4)", pass, 0.0, witness);
  }

  return rep;
}

}  // namespace qcstar
