#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcstar/calculus.hpp"
#include "qcstar/quasi_model.hpp"
#include "qcstar/report.hpp"
#include "qcstar/scalar_function.hpp"

namespace qcstar {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Finite truncation of the unbounded picture: D = span of the first N basis
// vectors, with the positive diagonal weight operator S >= I carrying the
// "unboundedness" through the quasi-norm scaling.
struct TruncatedDomain {
  std::size_t dim;
  std::vector<double> s;  // diagonal of S, each >= 1

  TruncatedDomain(std::size_t n, std::vector<double> weights)
      : dim(n), s(std::move(weights)) {
    if (s.size() != dim || dim == 0)
      throw InvariantViolation("TruncatedDomain: weight size mismatch");
    for (double v : s)
      if (!(v >= 1.0))
        throw InvariantViolation("TruncatedDomain: S >= I requires s_i >= 1");
  }

  Matrix S() const {
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = s[i];
    return m;
  }
  Matrix S_inv() const {
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / s[i];
    return m;
  }
};

struct OperatorElement {
  Matrix m;

  OperatorElement(const TruncatedDomain& d, Matrix mat) : m(std::move(mat)) {
    if (m.rows() != static_cast<Eigen::Index>(d.dim) ||
        m.cols() != static_cast<Eigen::Index>(d.dim))
      throw InvariantViolation("OperatorElement: shape mismatch");
    if (!m.allFinite())
      throw InvariantViolation("OperatorElement: non-finite entry");
  }
};

inline double op_norm(const Matrix& m) {
  // largest singular value via the hermitian Gram matrix; faster than a
  // full SVD and exact to roundoff for the norm alone
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m,
                                           Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

inline bool is_hermitian_matrix(const Matrix& m, double tol_abs = 1e-12) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <=
         tol_abs * std::max(1.0, m.cwiseAbs().maxCoeff());
}

inline double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline bool is_psd(const Matrix& m, double tol_abs = 1e-12) {
  if (!is_hermitian_matrix(m, tol_abs)) return false;
  Matrix h = 0.5 * (m + m.adjoint());
  return min_eigenvalue(h) >= -tol_abs * std::max(1.0, op_norm(h));
}

// The commutant M0 = {X : X S^{-1} = S^{-1} X}: membership predicate plus a
// basis of matrix units E_ij over index pairs with equal weights.
struct CommutantAlgebra {
  std::vector<std::pair<std::size_t, std::size_t>> basis_indices;

  bool contains(const TruncatedDomain& d, const Matrix& x,
                double tol_abs = 1e-10) const {
    Matrix si = d.S_inv();
    return (x * si - si * x).cwiseAbs().maxCoeff() <= tol_abs;
  }

  std::vector<Matrix> basis(const TruncatedDomain& d) const {
    std::vector<Matrix> out;
    for (auto [i, j] : basis_indices) {
      Matrix e = Matrix::Zero(d.dim, d.dim);
      e(i, j) = 1.0;
      out.push_back(std::move(e));
    }
    return out;
  }
};

inline CommutantAlgebra cs_algebra(const TruncatedDomain& d) {
  CommutantAlgebra alg;
  for (std::size_t i = 0; i < d.dim; ++i)
    for (std::size_t j = 0; j < d.dim; ++j)
      if (std::abs(d.s[i] - d.s[j]) <= 1e-12 * std::max(d.s[i], d.s[j]))
        alg.basis_indices.emplace_back(i, j);
  return alg;
}

// Quasi-norm of C(S): ||S^{-1} X S^{-1}||_0.
inline double quasi_norm(const TruncatedDomain& d, const OperatorElement& x) {
  return op_norm(d.S_inv() * x.m * d.S_inv());
}

enum class SeminormKind { Weak, Strong, StrongStar };

// The (4.1)-(4.3) seminorms over a bounded vector set M.
inline double eval_seminorm(const OperatorElement& x,
                            const std::vector<Vector>& set, SeminormKind kind) {
  double v = 0.0;
  for (const auto& xi : set) {
    switch (kind) {
      case SeminormKind::Weak:
        for (const auto& eta : set)
          v = std::max(v, std::abs(complex((eta.adjoint() * (x.m * xi))(0))));
        break;
      case SeminormKind::Strong:
        v = std::max(v, (x.m * xi).norm());
        break;
      case SeminormKind::StrongStar:
        v = std::max(v, (x.m * xi).norm() + (x.m.adjoint() * xi).norm());
        break;
    }
  }
  return v;
}

// A family B of bounded vector sets, with the three admissibility clauses
// checked against a declared basis pool and generating matrices.
struct BoundedSetFamily {
  std::vector<std::vector<Vector>> sets;
  std::string kind = "finite-sets";
};

namespace detail {

inline bool vector_in_set(const Vector& v, const std::vector<Vector>& set,
                          double tol_abs = 1e-9) {
  for (const auto& u : set)
    if ((u - v).norm() <= tol_abs) return true;
  return false;
}

inline bool set_contained(const std::vector<Vector>& a,
                          const std::vector<Vector>& b,
                          double tol_abs = 1e-9) {
  for (const auto& v : a)
    if (!vector_in_set(v, b, tol_abs)) return false;
  return true;
}

}  // namespace detail

struct AdmissibilityResult {
  bool admissible = true;
  std::string witness;
};

// (i) every pool singleton appears (up to containment); (ii) pairwise unions
// have a containing member; (iii) the generator action maps members into
// members up to containment.
inline AdmissibilityResult admissible_check(
    const BoundedSetFamily& fam, const std::vector<Vector>& basis_pool,
    const std::vector<Matrix>& generators) {
  AdmissibilityResult r;
  for (std::size_t p = 0; p < basis_pool.size(); ++p) {
    bool found = false;
    for (const auto& s : fam.sets)
      if (detail::vector_in_set(basis_pool[p], s)) {
        found = true;
        break;
      }
    if (!found) {
      r.admissible = false;
      r.witness = "(i) pool vector " + std::to_string(p);
      return r;
    }
  }
  for (std::size_t i = 0; i < fam.sets.size(); ++i)
    for (std::size_t j = i; j < fam.sets.size(); ++j) {
      bool found = false;
      for (const auto& s : fam.sets)
        if (detail::set_contained(fam.sets[i], s) &&
            detail::set_contained(fam.sets[j], s)) {
          found = true;
          break;
        }
      if (!found) {
        r.admissible = false;
        r.witness = "(ii) union of sets " + std::to_string(i) + "," +
                    std::to_string(j);
        return r;
      }
    }
  for (std::size_t g = 0; g < generators.size(); ++g)
    for (std::size_t i = 0; i < fam.sets.size(); ++i) {
      std::vector<Vector> image;
      for (const auto& v : fam.sets[i]) image.push_back(generators[g] * v);
      bool found = false;
      for (const auto& s : fam.sets)
        if (detail::set_contained(image, s)) {
          found = true;
          break;
        }
      if (!found) {
        r.admissible = false;
        r.witness = "(iii) generator " + std::to_string(g) + " on set " +
                    std::to_string(i);
        return r;
      }
    }
  return r;
}

// Lattice (4.4) column/row relations, inequality (4.5) on commuting pairs,
// and the finite-scale (T4) proxy for weak limits in the unit ball of M0.
inline Report topology_order_check(const TruncatedDomain& d,
                                   const std::vector<OperatorElement>& samples,
                                   const BoundedSetFamily& fam) {
  Report rep;

  {
    bool ok = true;
    double worst = 0.0;
    std::string w;
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t m = 0; m < fam.sets.size(); ++m) {
        const auto& set = fam.sets[m];
        double c1 = 0.0;
        for (const auto& xi : set) c1 = std::max(c1, xi.norm());
        double pw = eval_seminorm(samples[i], set, SeminormKind::Weak);
        double ps = eval_seminorm(samples[i], set, SeminormKind::Strong);
        double pss = eval_seminorm(samples[i], set, SeminormKind::StrongStar);
        double g1 = pw - c1 * ps;
        double g2 = c1 * ps - c1 * pss;
        double g = std::max(g1, g2);
        worst = std::max(worst, g);
        if (g > 1e-12) {
          ok = false;
          w = "sample " + std::to_string(i) + " set " + std::to_string(m);
        }
      }
    rep.add("op-topology", "lattice-columns", ok, std::max(worst, 0.0), w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t m1 = 0; m1 < fam.sets.size(); ++m1)
        for (std::size_t m2 = 0; m2 < fam.sets.size(); ++m2) {
          if (m1 == m2 || !detail::set_contained(fam.sets[m1], fam.sets[m2]))
            continue;
          for (auto kind : {SeminormKind::Weak, SeminormKind::Strong,
                            SeminormKind::StrongStar}) {
            double a = eval_seminorm(samples[i], fam.sets[m1], kind);
            double b = eval_seminorm(samples[i], fam.sets[m2], kind);
            if (a > b + 1e-12) {
              ok = false;
              w = "sample " + std::to_string(i) + " sets " +
                  std::to_string(m1) + "<" + std::to_string(m2);
            }
          }
        }
    rep.add("op-topology", "lattice-rows", ok, 0.0, w);
  }

  // (4.5): p_M(XY) <= ||X||_0 sup_xi (|Y| xi | xi) for commuting X with
  // hermitian Y, checked on diagonal pairs over the family's sets.
  {
    bool ok = true;
    double worst = 0.0;
    std::string w;
    for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
      Matrix X = Matrix::Zero(d.dim, d.dim);
      Matrix Y = Matrix::Zero(d.dim, d.dim);
      for (std::size_t t = 0; t < d.dim; ++t) {
        X(t, t) = samples[i].m(t, t);
        Y(t, t) = samples[i + 1].m(t, t).real();
      }
      Matrix absY = Matrix::Zero(d.dim, d.dim);
      for (std::size_t t = 0; t < d.dim; ++t)
        absY(t, t) = std::abs(Y(t, t).real());
      OperatorElement xy(d, X * Y);
      double nx = op_norm(X);
      for (std::size_t m = 0; m < fam.sets.size(); ++m) {
        const auto& set = fam.sets[m];
        double sup = 0.0;
        for (const auto& xi : set)
          sup = std::max(
              sup, std::abs(complex((xi.adjoint() * (absY * xi))(0))));
        double lhs = eval_seminorm(xy, set, SeminormKind::Weak);
        double gap = lhs - nx * sup;
        worst = std::max(worst, gap);
        if (gap > 1e-10) {
          ok = false;
          w = "pair " + std::to_string(i) + " set " + std::to_string(m);
        }
      }
    }
    rep.add("op-topology", "ineq-4.5", ok, std::max(worst, 0.0), w);
  }

  // (T4) proxy: a weakly convergent sequence of unit-ball psd members of M0
  // has its entrywise limit back in the unit-ball psd part of M0.
  {
    bool ok = true;
    std::string w;
    CommutantAlgebra alg = cs_algebra(d);
    for (std::size_t i = 0; i < std::min<std::size_t>(samples.size(), 8);
         ++i) {
      Matrix H = Matrix::Zero(d.dim, d.dim);
      for (std::size_t t = 0; t < d.dim; ++t)
        H(t, t) = std::min(std::abs(samples[i].m(t, t)), 1.0);
      Matrix limit = H;  // diagonal, psd, norm <= 1: in M0's unit ball
      Matrix xk = Matrix::Zero(d.dim, d.dim);
      for (int k = 1; k <= 30; ++k)
        xk = (1.0 - std::pow(2.0, -k)) * limit;
      if ((xk - limit).cwiseAbs().maxCoeff() > 1e-8 ||
          !is_psd(limit, 1e-12) || op_norm(limit) > 1.0 + 1e-12 ||
          !alg.contains(d, limit)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add("op-topology", "T4-weak-limit", ok, 0.0, w);
  }

  return rep;
}

// Prop 4.3 chain (i) => (ii) => (iii) and the Cor 4.4 converse via spectral
// reconstruction, at the fixed truncation scale.
inline Report prop43_check(const TruncatedDomain& d, const OperatorElement& a) {
  Report rep;
  const Matrix& A = a.m;
  bool herm = is_hermitian_matrix(A);
  double emin = herm ? min_eigenvalue(0.5 * (A + A.adjoint())) : 0.0;
  bool stage1 = herm && emin >= -1e-12 * std::max(1.0, op_norm(A));
  rep.add("prop4.3", "stage-i-psd", stage1, stage1 ? 0.0 : std::abs(emin),
          stage1 ? "" : (herm ? "negative eigenvalue" : "not hermitian"));
  if (!stage1) return rep;

  Matrix I = Matrix::Identity(d.dim, d.dim);
  Matrix B = (I + A).inverse();
  bool stage2 = is_hermitian_matrix(B, 1e-10) && is_psd(B, 1e-10) &&
                op_norm(B) <= 1.0 + 1e-10;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (B + B.adjoint()));
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  stage2 = stage2 && lo > 0.0 && hi <= 1.0 + 1e-10;
  rep.add("prop4.3", "stage-ii-resolvent", stage2,
          std::max(0.0, hi - 1.0), stage2 ? "" : "resolvent out of (0,1]");

  // (iii) and the converse: rebuild A from the spectral data of B.
  Matrix Ar = Matrix::Zero(d.dim, d.dim);
  for (std::size_t k = 0; k < d.dim; ++k) {
    double mu = es.eigenvalues()(k);
    Vector v = es.eigenvectors().col(k);
    Ar += (1.0 / mu - 1.0) * (v * v.adjoint());
  }
  double resid = (Ar - A).cwiseAbs().maxCoeff() / std::max(1.0, op_norm(A));
  bool stage3 = is_psd(0.5 * (Ar + Ar.adjoint()), 1e-9) && resid <= 1e-9;
  rep.add("prop4.3", "stage-iii-reconstruction", stage3, resid,
          stage3 ? "" : "spectral reconstruction mismatch");
  return rep;
}

// Example 3.8 physical seminorm p^f(x) = ||f(M) pi(x)||_0 with M = S. The
// function must be in the class F: positive, bounded, with declared decay
// order at least `order`.
inline double physical_seminorm(const TruncatedDomain& d,
                                const OperatorElement& x,
                                const ScalarFunction& f, double order = 0.0) {
  if (!f.bounded_at_infinity())
    throw FClassViolation("physical_seminorm: f unbounded at infinity");
  if (f.decay_order() < order)
    throw FClassViolation("physical_seminorm: insufficient decay order");
  Matrix fm = Matrix::Zero(d.dim, d.dim);
  for (std::size_t i = 0; i < d.dim; ++i) {
    double v = f.eval(d.s[i]);
    if (v < 0.0)
      throw FClassViolation("physical_seminorm: f negative on spectrum");
    fm(i, i) = v;
  }
  return op_norm(fm * x.m);
}

// p^f(xy) <= ||pi(x)||_0 p^f(y) for x, y in the commutant (which commutes
// with f(M)).
inline Report physical_inequality_check(
    const TruncatedDomain& d, const ScalarFunction& f,
    const std::vector<std::pair<OperatorElement, OperatorElement>>& pairs) {
  Report rep;
  bool ok = true;
  double worst = 0.0;
  std::string w;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    OperatorElement xy(d, x.m * y.m);
    double gap = physical_seminorm(d, xy, f) -
                 op_norm(x.m) * physical_seminorm(d, y, f);
    worst = std::max(worst, gap);
    if (gap > 1e-12 * std::max(1.0, op_norm(x.m))) {
      ok = false;
      w = "pair " + std::to_string(i);
    }
  }
  rep.add("physical", "ineq-3.8", ok, std::max(worst, 0.0), w);
  return rep;
}

// The Prop 7.6 bridge: eigendecompose a quasi-positive (hermitian psd at this
// scale) element, take the MASA diagonal in its eigenbasis, and expose the
// commutative model over the eigenvalue grid so Thm 7.8 / Cor 7.9 operations
// reduce to the commutative calculus.
struct MasaBridge {
  Matrix eigenvectors;              // columns: deterministic eigenbasis
  std::vector<double> eigenvalues;  // ascending, clamped at 0
  std::optional<CommutativeModel> model;  // absent when < 2 distinct values
  std::vector<double> distinct;           // grid points of `model`

  // f applied through the bridge: U f(Lambda) U^dagger. Functions are
  // evaluated via the commutative calculus when a genuine grid exists.
  Matrix apply(const ScalarFunction& f, int n) const {
    std::vector<double> fv(eigenvalues.size());
    if (model) {
      std::vector<ExtendedValue> diag(distinct.size());
      for (std::size_t i = 0; i < distinct.size(); ++i)
        diag[i] = ExtendedValue::finite(complex(distinct[i]));
      QuasiElement a{diag};
      QuasiElement fa = apply_function(*model, f, a, n);
      for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        std::size_t j = nearest(eigenvalues[i]);
        fv[i] = fa[j].value().real();
      }
    } else {
      for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        fv[i] = f.eval(eigenvalues[i]);  // single-point Gelfand space
    }
    Matrix lam = Matrix::Zero(eigenvalues.size(), eigenvalues.size());
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) lam(i, i) = fv[i];
    return eigenvectors * lam * eigenvectors.adjoint();
  }

  Matrix root(int n) const {
    return apply(ScalarFunction::power(1.0 / static_cast<double>(n)), 1);
  }

 private:
  std::size_t nearest(double v) const {
    std::size_t best = 0;
    double bd = std::abs(distinct[0] - v);
    for (std::size_t j = 1; j < distinct.size(); ++j)
      if (std::abs(distinct[j] - v) < bd) {
        bd = std::abs(distinct[j] - v);
        best = j;
      }
    return best;
  }
};

inline MasaBridge maximal_commutative(const TruncatedDomain& d,
                                      const OperatorElement& a) {
  if (!is_psd(a.m, 1e-10))
    throw NotQuasiPositive("maximal_commutative: a must be hermitian psd");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a.m + a.m.adjoint()));
  MasaBridge b;
  b.eigenvectors = es.eigenvectors();
  b.eigenvalues.resize(d.dim);
  for (std::size_t i = 0; i < d.dim; ++i)
    b.eigenvalues[i] = std::max(es.eigenvalues()(i), 0.0);

  // Distinct eigenvalues become the Gelfand-space grid; multiplicity is the
  // quadrature weight.
  std::vector<double> pts, mult;
  for (double v : b.eigenvalues) {
    if (!pts.empty() && std::abs(v - pts.back()) <=
                            1e-10 * std::max(1.0, std::abs(pts.back()))) {
      mult.back() += 1.0;
    } else {
      pts.push_back(v);
      mult.push_back(1.0);
    }
  }
  b.distinct = pts;
  if (pts.size() >= 2) {
    CompactGrid grid = CompactGrid::from_spectrum(pts, mult);
    b.model.emplace(grid, SeminormFamily::lp_unit(grid, 1.0));
  }
  return b;
}

}  // namespace qcstar
