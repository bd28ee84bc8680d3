#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "qcstar/gelfand.hpp"
#include "qcstar/quasi_model.hpp"
#include "qcstar/scalar_function.hpp"

namespace qcstar {

// sigma(a) over C* = C u {inf}: the closure of the transform's range. The
// finite part is the set of grid values; inf belongs to the spectrum exactly
// when the element has an infinity point (equivalently a is not in A0).
struct Spectrum {
  std::vector<double> finite_values;
  bool contains_infinity = false;

  double finite_sup() const {
    double m = 0.0;
    for (double v : finite_values) m = std::max(m, std::abs(v));
    return m;
  }
};

inline Spectrum spectrum(const CommutativeModel& model, const QuasiElement& a) {
  if (!model.is_quasi_positive(a))
    throw NotQuasiPositive("spectrum: a must be quasi-positive");
  Spectrum s;
  for (const auto& v : a.values()) {
    if (v.is_infinite()) {
      s.contains_infinity = true;
    } else {
      double r = v.value().real();
      if (r < 0.0) r = 0.0;  // quasi-positive up to roundoff
      s.finite_values.push_back(r);
    }
  }
  std::sort(s.finite_values.begin(), s.finite_values.end());
  s.finite_values.erase(
      std::unique(s.finite_values.begin(), s.finite_values.end()),
      s.finite_values.end());
  return s;
}

// Smallest k <= n with g_k = f/(1+l)^k bounded on sigma(a). When inf is in
// the spectrum the decision is symbolic (growth exponent of f <= k), guarded
// by a numeric sup over the sampled finite spectrum; otherwise k = 0.
inline std::optional<int> class_index(const CommutativeModel& model,
                                      const ScalarFunction& f,
                                      const QuasiElement& a, int n) {
  if (n < 1) throw DomainError("class_index: n must be >= 1");
  Spectrum s = spectrum(model, a);
  constexpr double kSupGuard = 1e12;
  for (int k = 0; k <= n; ++k) {
    if (s.contains_infinity && f.growth_exponent() > static_cast<double>(k))
      continue;
    double sup = 0.0;
    bool ok = true;
    for (double lam : s.finite_values) {
      if (!f.defined_at(lam)) {
        ok = false;
        break;
      }
      sup = std::max(sup,
                     std::abs(f.eval(lam)) / std::pow(1.0 + lam, k));
    }
    if (ok && sup <= kSupGuard) return k;
  }
  return std::nullopt;
}

// Pointwise power of a quasi-positive element; inf points stay inf (the
// limit-product convention).
inline QuasiElement power_element(const CommutativeModel& model,
                                  const QuasiElement& a, int n) {
  if (n < 1) throw DomainError("power_element: n must be >= 1");
  std::vector<ExtendedValue> v(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].is_infinite()) {
      v[t] = ExtendedValue::infinity();
    } else {
      double r = std::max(a[t].value().real(), 0.0);
      v[t] = ExtendedValue::finite(complex(std::pow(r, n)));
    }
  }
  QuasiElement r(std::move(v));
  model.validate(r);
  return r;
}

// f(a) = g_k(a)(1+a)^k computed with an explicit class index k: at finite
// points g_k(l) is evaluated and multiplied back by (1+l)^k; at infinity
// points the continuous extension lim f(l) is used, Infinity if divergent.
inline QuasiElement apply_with_k(const CommutativeModel& model,
                                 const ScalarFunction& f,
                                 const QuasiElement& a, int k) {
  std::vector<ExtendedValue> v(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].is_infinite()) {
      auto lim = f.limit_at_infinity();
      v[t] = lim ? ExtendedValue::finite(complex(*lim))
                 : ExtendedValue::infinity();
    } else {
      double lam = std::max(a[t].value().real(), 0.0);
      if (!f.defined_at(lam))
        throw DomainError("apply_with_k: f undefined on the spectrum");
      double gk = f.eval(lam) / std::pow(1.0 + lam, k);
      v[t] = ExtendedValue::finite(complex(gk * std::pow(1.0 + lam, k)));
    }
  }
  QuasiElement r(std::move(v));
  model.validate(r);
  return r;
}

inline QuasiElement apply_function(const CommutativeModel& model,
                                   const ScalarFunction& f,
                                   const QuasiElement& a, int n) {
  if (!model.is_quasi_positive(a))
    throw NotQuasiPositive("apply_function: a must be quasi-positive");
  auto k = class_index(model, f, a, n);
  if (!k) throw NotInClass("apply_function: f is not in C_n(sigma(a))");
  power_element(model, a, n);  // Thm 6.6 hypothesis: a^n representable
  return apply_with_k(model, f, a, *k);
}

namespace detail {

// Seminorm of the finite part of x over a coarsened (stride-2) copy of the
// grid, with trapezoid weights rebuilt from the surviving points. Comparing
// against the full-grid value detects quadrature that diverges under
// refinement (grows as the grid resolves a singularity).
inline double coarse_seminorm(const CommutativeModel& model,
                              const std::vector<ExtendedValue>& x,
                              std::size_t spec_idx) {
  const auto& g = model.grid();
  const auto& s = model.family().spec(spec_idx);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < g.size(); i += 2) idx.push_back(i);
  if (idx.back() != g.size() - 1) idx.push_back(g.size() - 1);
  double acc = 0.0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    double lo = j == 0 ? g.point(idx[0]) : g.point(idx[j - 1]);
    double hi = j + 1 == idx.size() ? g.point(idx[j]) : g.point(idx[j + 1]);
    double w = 0.5 * (hi - lo);
    const auto& v = x[idx[j]];
    if (v.is_finite())
      acc += s.weight[idx[j]] * w * std::pow(std::abs(v.value()), s.p);
  }
  return std::pow(acc, 1.0 / s.p);
}

}  // namespace detail

struct ProductOptions {
  double eps_base = 2.0;  // schedule eps_k = eps_base^{-k}
  double tol = tol::kTauConvergence;
  double decay = tol::kCauchyDecay;
  int window = tol::kCauchyWindow;
  int max_steps = tol::kCauchyMaxSteps;
  double refinement_gap = 0.05;  // max relative full-vs-coarse seminorm gap
};

// Partial multiplication of quasi-positives along a regularization schedule.
// The iterates x_k y_k (inf points carrying the limit tag of a(t)b(t)) must
// be tau-Cauchy with geometric decay, and the candidate limit's quadrature
// must be stable under grid coarsening; otherwise a is not a multiplier of b.
inline QuasiElement partial_product(const CommutativeModel& model,
                                    const QuasiElement& a,
                                    const QuasiElement& b,
                                    const ProductOptions& opt = {}) {
  if (!model.is_quasi_positive(a) || !model.is_quasi_positive(b))
    throw NotQuasiPositive("partial_product: inputs must be quasi-positive");

  // Candidate limit: pointwise extended product with inf*inf = inf (the
  // regularized nets genuinely diverge there).
  std::vector<ExtendedValue> limit(a.size());
  for (std::size_t t = 0; t < a.size(); ++t)
    limit[t] = ExtendedValue::limit_product(a[t], b[t]);

  auto tagged_seminorm = [&](const BoundedFunction& f, std::size_t l) {
    // Seminorm that treats the limit's infinity set as null, matching the
    // completion's view of the iterates.
    const auto& s = model.family().spec(l);
    double acc = 0.0;
    for (std::size_t t = 0; t < f.size(); ++t)
      if (limit[t].is_finite())
        acc += s.weight[t] * model.grid().weight(t) *
               std::pow(std::abs(f[t]), s.p);
    return std::pow(acc, 1.0 / s.p);
  };

  std::vector<double> diffs;
  BoundedFunction prev = BoundedFunction::constant(model.grid(), 0.0);
  bool cauchy = false;
  for (int k = 1; k <= opt.max_steps; ++k) {
    double eps = std::pow(opt.eps_base, -k);
    BoundedFunction pk = model.regularize(a, eps) * model.regularize(b, eps);
    if (k > 1) {
      double d = 0.0;
      BoundedFunction delta = pk - prev;
      for (std::size_t l = 0; l < model.family().size(); ++l)
        d = std::max(d, tagged_seminorm(delta, l));
      diffs.push_back(d);
      if (d <= opt.tol && static_cast<int>(diffs.size()) >= opt.window) {
        bool decaying = true;
        for (std::size_t j = diffs.size() - opt.window + 1; j < diffs.size();
             ++j)
          if (diffs[j] > opt.decay * diffs[j - 1] && diffs[j] > opt.tol)
            decaying = false;
        if (decaying) {
          cauchy = true;
          break;
        }
      }
    }
    prev = pk;
  }
  if (!cauchy)
    throw NotMultipliable("partial_product: schedule is not tau-Cauchy");

  // Refinement guard: the candidate's quadrature must not grow as the grid
  // resolves the singular set (L^1-divergent products fail here).
  for (std::size_t l = 0; l < model.family().size(); ++l) {
    QuasiElement cand(limit);
    double full = model.seminorm(cand, l);
    double coarse = detail::coarse_seminorm(model, limit, l);
    if (std::abs(full - coarse) > opt.refinement_gap * std::max(1.0, full))
      throw NotMultipliable(
          "partial_product: product quadrature diverges under refinement");
  }

  QuasiElement r(std::move(limit));
  model.validate(r);
  return r;
}

// (ax)(by) := (ab) xy for multiplier pairs (mixed elements with y = 0).
inline QuasiElement mixed_product(const CommutativeModel& model,
                                  const MixedElement& m1,
                                  const MixedElement& m2,
                                  const ProductOptions& opt = {}) {
  if (sup_norm(m1.y()) != 0.0 || sup_norm(m2.y()) != 0.0)
    throw DomainError("mixed_product: requires y = 0 components");
  QuasiElement ab = partial_product(model, m1.a(), m2.a(), opt);
  return model.module_mult(m1.x() * m2.x(), ab);
}

// Quasi n-th root: pointwise l^{1/n} with inf fixed; the unique
// quasi-positive pointwise root.
inline QuasiElement nth_root(const CommutativeModel& model,
                             const QuasiElement& a, int n) {
  if (n < 1) throw DomainError("nth_root: n must be >= 1");
  if (!model.is_quasi_positive(a))
    throw NotQuasiPositive("nth_root: a must be quasi-positive");
  std::vector<ExtendedValue> v(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].is_infinite()) {
      v[t] = ExtendedValue::infinity();
    } else {
      double r = std::max(a[t].value().real(), 0.0);
      v[t] = ExtendedValue::finite(
          complex(std::pow(r, 1.0 / static_cast<double>(n))));
    }
  }
  QuasiElement r(std::move(v));
  model.validate(r);
  return r;
}

}  // namespace qcstar
