#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "qcstar/base_algebra.hpp"
#include "qcstar/extended.hpp"
#include "qcstar/grid.hpp"

namespace qcstar {

// Weighted L^p seminorm spec: p_lambda(a) = (sum_t w(t) q(t) |a(t)|^p)^(1/p)
// with q the grid quadrature weight. Each spec is dominated by the sup norm
// with constant C_lambda = (sum w q)^(1/p).
struct SeminormSpec {
  double p;
  std::vector<double> weight;  // strictly positive, one per grid point
};

class SeminormFamily {
 public:
  SeminormFamily(const CompactGrid& grid, std::vector<SeminormSpec> specs)
      : specs_(std::move(specs)) {
    if (specs_.empty()) throw InvariantViolation("SeminormFamily: empty");
    for (const auto& s : specs_) {
      if (!(s.p >= 1.0)) throw InvariantViolation("SeminormFamily: p < 1");
      if (s.weight.size() != grid.size())
        throw InvariantViolation("SeminormFamily: weight size mismatch");
      for (double w : s.weight)
        if (!(w > 0.0))
          throw InvariantViolation("SeminormFamily: weight must be positive");
    }
  }

  static SeminormFamily lp_unit(const CompactGrid& grid, double p) {
    return SeminormFamily(grid, {{p, std::vector<double>(grid.size(), 1.0)}});
  }

  std::size_t size() const { return specs_.size(); }
  const SeminormSpec& spec(std::size_t i) const { return specs_.at(i); }

  double domination_constant(const CompactGrid& grid, std::size_t i) const {
    const auto& s = specs_.at(i);
    double sum = 0.0;
    for (std::size_t t = 0; t < s.weight.size(); ++t)
      sum += s.weight[t] * grid.weight(t);
    return std::pow(sum, 1.0 / s.p);
  }

 private:
  std::vector<SeminormSpec> specs_;
};

// Element of the completion: extended-complex values on the grid, with the
// infinity set nowhere dense in the discrete sense (no window of 3 adjacent
// grid points all infinite).
class QuasiElement {
 public:
  explicit QuasiElement(std::vector<ExtendedValue> values)
      : values_(std::move(values)) {
    int run = 0;
    for (const auto& v : values_) {
      run = v.is_infinite() ? run + 1 : 0;
      if (run >= 3)
        throw InvariantViolation(
            "QuasiElement: infinity set fills a 3-point window");
    }
    hermitian_ = compute_hermitian();
  }

  std::size_t size() const { return values_.size(); }
  const ExtendedValue& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<ExtendedValue>& values() const { return values_; }
  bool hermitian() const { return hermitian_; }

  std::vector<std::size_t> infinity_set() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i].is_infinite()) s.push_back(i);
    return s;
  }

  double finite_sup() const {
    double m = 0.0;
    for (const auto& v : values_)
      if (v.is_finite()) m = std::max(m, std::abs(v.value()));
    return m;
  }

  QuasiElement conj() const {
    std::vector<ExtendedValue> v(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) v[i] = values_[i].conj();
    return QuasiElement(std::move(v));
  }

 private:
  bool compute_hermitian() const {
    double scale = std::max(1.0, finite_sup());
    for (const auto& v : values_)
      if (v.is_finite() &&
          std::abs(v.value().imag()) > tol::kHermitianImag * scale)
        return false;
    return true;
  }

  std::vector<ExtendedValue> values_;
  bool hermitian_ = true;
};

// The commutative desk-scale model: A0 = bounded functions on the grid,
// completed under the weighted L^p seminorm topology.
class CommutativeModel {
 public:
  CommutativeModel(CompactGrid grid, SeminormFamily family)
      : grid_(std::move(grid)), family_(std::move(family)) {}

  const CompactGrid& grid() const { return grid_; }
  const SeminormFamily& family() const { return family_; }

  // Quadrature mass the infinity set may carry while still being treated as
  // a null set. Anything larger makes the element invalid.
  double infinity_measure_tolerance() const { return 4.0 * grid_.spacing(); }

  QuasiElement embed(const BoundedFunction& x) const {
    require_size(x.size());
    std::vector<ExtendedValue> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      v[i] = ExtendedValue::finite(x[i]);
    return QuasiElement(std::move(v));
  }

  BoundedFunction to_bounded(const QuasiElement& a) const {
    require_size(a.size());
    std::vector<complex> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_infinite())
        throw DomainError("to_bounded: element has an infinity point");
      v[i] = a[i].value();
    }
    return BoundedFunction(std::move(v));
  }

  enum class Side { Left, Right };

  // Module multiplication of a completion element by an algebra element.
  // Pointwise, with finite*inf = inf for a nonzero finite factor and
  // 0*inf = 0. Commutative model, so the side only fixes notation.
  QuasiElement module_mult(const BoundedFunction& x, const QuasiElement& a,
                           Side side = Side::Left) const {
    (void)side;
    require_size(x.size());
    require_size(a.size());
    std::vector<ExtendedValue> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = x[i] * a[i];
    QuasiElement r(std::move(v));
    validate(r);
    return r;
  }

  // (1+a)^{-1} for quasi-positive a; infinity points map to 0.
  BoundedFunction invert_one_plus(const QuasiElement& a) const {
    if (!is_quasi_positive(a))
      throw NotQuasiPositive("invert_one_plus: a not quasi-positive");
    std::vector<complex> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      v[i] = a[i].is_infinite() ? 0.0 : 1.0 / (1.0 + a[i].value().real());
    return BoundedFunction(std::move(v));
  }

  // a_eps = a (1 + eps a)^{-1}; infinity points map to 1/eps. The result is
  // a positive algebra element with sup norm <= 1/eps.
  BoundedFunction regularize(const QuasiElement& a, double eps) const {
    if (!(eps > 0.0)) throw DomainError("regularize: eps must be positive");
    if (!is_quasi_positive(a))
      throw NotQuasiPositive("regularize: a not quasi-positive");
    std::vector<complex> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_infinite()) {
        v[i] = 1.0 / eps;
      } else {
        double r = std::max(a[i].value().real(), 0.0);
        v[i] = r / (1.0 + eps * r);
      }
    }
    return BoundedFunction(std::move(v));
  }

  double seminorm(const BoundedFunction& x, std::size_t idx) const {
    require_size(x.size());
    const auto& s = family_.spec(idx);
    double acc = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t)
      acc += s.weight[t] * grid_.weight(t) * std::pow(std::abs(x[t]), s.p);
    return std::pow(acc, 1.0 / s.p);
  }

  // Seminorm of the finite part. If the infinity set carries more quadrature
  // mass than the null-set tolerance the seminorm is +inf and the element is
  // outside the model.
  double seminorm(const QuasiElement& a, std::size_t idx) const {
    require_size(a.size());
    if (infinity_mass(a) > infinity_measure_tolerance())
      return std::numeric_limits<double>::infinity();
    const auto& s = family_.spec(idx);
    double acc = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t)
      if (a[t].is_finite())
        acc += s.weight[t] * grid_.weight(t) *
               std::pow(std::abs(a[t].value()), s.p);
    return std::pow(acc, 1.0 / s.p);
  }

  double infinity_mass(const QuasiElement& a) const {
    double mass = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t)
      if (a[t].is_infinite()) mass += grid_.weight(t);
    return mass;
  }

  // tau-distance proxy: max over the family of seminorms of the difference.
  double tau_distance(const BoundedFunction& x, const BoundedFunction& y) const {
    double d = 0.0;
    for (std::size_t i = 0; i < family_.size(); ++i)
      d = std::max(d, seminorm(x - y, i));
    return d;
  }

  bool is_quasi_positive(const QuasiElement& a,
                         double rel_tol = tol::kPositivityRel) const {
    require_size(a.size());
    if (!a.hermitian()) return false;
    double t = std::max(rel_tol * a.finite_sup(), tol::kPositivityFloor);
    for (const auto& v : a.values())
      if (v.is_finite() && v.value().real() < -t) return false;
    return true;
  }

  QuasiElement add(const QuasiElement& a, const QuasiElement& b) const {
    require_size(a.size());
    require_size(b.size());
    std::vector<ExtendedValue> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] + b[i];
    QuasiElement r(std::move(v));
    validate(r);
    return r;
  }

  QuasiElement scale(complex c, const QuasiElement& a) const {
    require_size(a.size());
    std::vector<ExtendedValue> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = c * a[i];
    QuasiElement r(std::move(v));
    validate(r);
    return r;
  }

  // Wedge operations on quasi-positives: a+b and scalar*a.
  QuasiElement wedge_add(const QuasiElement& a, const QuasiElement& b) const {
    if (!is_quasi_positive(a) || !is_quasi_positive(b))
      throw NotQuasiPositive("wedge_add: inputs must be quasi-positive");
    return add(a, b);
  }
  QuasiElement wedge_scale(double c, const QuasiElement& a) const {
    if (!(c >= 0.0)) throw DomainError("wedge_scale: scalar must be >= 0");
    if (!is_quasi_positive(a))
      throw NotQuasiPositive("wedge_scale: input must be quasi-positive");
    return scale(c, a);
  }

  void validate(const QuasiElement& a) const {
    for (std::size_t i = 0; i < family_.size(); ++i)
      if (!(seminorm(a, i) < tol::kFiniteBound))
        throw InvariantViolation("QuasiElement: a seminorm diverges");
  }

  // Quasi element sampled from a real extended-valued function of t.
  template <typename F>
  QuasiElement sample(F&& f) const {
    std::vector<ExtendedValue> v(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      double r = f(grid_.point(i));
      v[i] = std::isinf(r) ? ExtendedValue::infinity()
                           : ExtendedValue::finite(complex(r));
    }
    QuasiElement a(std::move(v));
    validate(a);
    return a;
  }

 private:
  void require_size(std::size_t n) const {
    if (n != grid_.size())
      throw InvariantViolation("model: element size does not match grid");
  }

  CompactGrid grid_;
  SeminormFamily family_;
};

}  // namespace qcstar
