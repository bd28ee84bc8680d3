#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qcstar/quasi_model.hpp"
#include "qcstar/report.hpp"

namespace qcstar {

// Element ax + y of M(A0, A[tau]_q+) with a quasi-positive, x, y in A0.
// The modulus |x| and the product a|x| (the denominator element of phi')
// are fixed at construction, following the hermitian-parts reduction.
class MixedElement {
 public:
  MixedElement(const CommutativeModel& model, QuasiElement a, BoundedFunction x,
               BoundedFunction y)
      : a_(std::move(a)), x_(std::move(x)), y_(std::move(y)),
        abs_x_(BoundedFunction::constant(model.grid(), 0.0)),
        a_abs_x_(model.embed(BoundedFunction::constant(model.grid(), 0.0))) {
    if (!model.is_quasi_positive(a_))
      throw NotQuasiPositive("MixedElement: a must be quasi-positive");
    std::vector<complex> av(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) av[i] = std::abs(x_[i]);
    abs_x_ = BoundedFunction(std::move(av));
    a_abs_x_ = model.module_mult(abs_x_, a_);
  }

  const QuasiElement& a() const { return a_; }
  const BoundedFunction& x() const { return x_; }
  const BoundedFunction& y() const { return y_; }
  const BoundedFunction& abs_x() const { return abs_x_; }
  const QuasiElement& a_abs_x() const { return a_abs_x_; }

 private:
  QuasiElement a_;
  BoundedFunction x_, y_;
  BoundedFunction abs_x_;
  QuasiElement a_abs_x_;
};

// C*-valued function on the character space, the image of the hat transform.
class ExtendedFunction {
 public:
  explicit ExtendedFunction(std::vector<ExtendedValue> values)
      : values_(std::move(values)) {
    int run = 0;
    for (const auto& v : values_) {
      run = v.is_infinite() ? run + 1 : 0;
      if (run >= 3)
        throw InvariantViolation(
            "ExtendedFunction: infinity set fills a 3-point window");
    }
  }

  std::size_t size() const { return values_.size(); }
  const ExtendedValue& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<ExtendedValue>& values() const { return values_; }

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

  bool same_as(const ExtendedFunction& o, double tol_abs = 0.0) const {
    if (size() != o.size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
      if (!values_[i].same_tag(o.values_[i])) return false;
      if (values_[i].is_finite() &&
          std::abs(values_[i].value() - o.values_[i].value()) > tol_abs)
        return false;
    }
    return true;
  }

  ExtendedFunction pointwise_conj() const {
    std::vector<ExtendedValue> v(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) v[i] = values_[i].conj();
    return ExtendedFunction(std::move(v));
  }

 private:
  std::vector<ExtendedValue> values_;
};

// phi'(ax+y) at the character of grid index char.index: the ratio
// phi((ax+y)(1+a|x|)^{-1}) / phi((1+a|x|)^{-1}), Infinity on the
// denominator-zero branch.
inline ExtendedValue phi_prime(const CommutativeModel& model,
                               Character ch, const MixedElement& m) {
  const std::size_t t = ch.index;
  BoundedFunction inv = model.invert_one_plus(m.a_abs_x());
  complex d = inv[t];
  if (std::abs(d) <= tol::kDenominatorZero) return ExtendedValue::infinity();
  // The denominator is nonzero, so a|x| is finite at t; ax is finite there
  // unless x(t) = 0, where module multiplication gives 0 * inf = 0.
  ExtendedValue ax_t = complex(m.x()[t]) * m.a()[t];
  complex num = (ax_t.value() + m.y()[t]) * d;
  return ExtendedValue::finite(num / d);
}

// The extended Gelfand transform: phi' evaluated at every character.
inline ExtendedFunction transform(const CommutativeModel& model,
                                  const MixedElement& m) {
  std::vector<ExtendedValue> v(model.grid().size());
  for (std::size_t t = 0; t < v.size(); ++t)
    v[t] = phi_prime(model, Character{t}, m);
  return ExtendedFunction(std::move(v));
}

namespace detail {

inline MixedElement as_mixed(const CommutativeModel& model,
                             const QuasiElement& a) {
  return MixedElement(model, a, BoundedFunction::constant(model.grid(), 1.0),
                      BoundedFunction::constant(model.grid(), 0.0));
}

}  // namespace detail

// Functional laws of phi': wedge additivity, homogeneity (0 * inf = 0),
// the guarded product law, and the Lemma 5.1(2) denominator implications.
// Guard-failing (inf * 0) product cases are counted as indeterminate, not
// assigned a value.
inline Report functional_laws_check(const CommutativeModel& model,
                                    const std::vector<MixedElement>& samples,
                                    const std::vector<Character>& chars,
                                    double tol_abs = 1e-10) {
  Report rep;
  double worst_add = 0.0, worst_hom = 0.0, worst_prod = 0.0;
  bool add_ok = true, hom_ok = true, prod_ok = true, lemma_ok = true;
  std::string add_w, hom_w, prod_w, lemma_w;
  std::size_t indeterminate = 0;

  for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
    const auto& a = samples[i].a();
    const auto& b = samples[i + 1].a();
    QuasiElement sum = model.wedge_add(a, b);
    auto ma = detail::as_mixed(model, a);
    auto mb = detail::as_mixed(model, b);
    auto ms = detail::as_mixed(model, sum);
    for (auto ch : chars) {
      ExtendedValue va = phi_prime(model, ch, ma);
      ExtendedValue vb = phi_prime(model, ch, mb);
      ExtendedValue vs = phi_prime(model, ch, ms);
      ExtendedValue expect = va + vb;
      if (!vs.same_tag(expect)) {
        add_ok = false;
        add_w = "pair " + std::to_string(i) + " char " + std::to_string(ch.index);
      } else if (vs.is_finite()) {
        double gap = std::abs(vs.value() - expect.value());
        if (gap > worst_add) worst_add = gap;
        if (gap > tol_abs) {
          add_ok = false;
          add_w = "pair " + std::to_string(i) + " char " +
                  std::to_string(ch.index);
        }
      }
    }
  }
  rep.add("gelfand", "additivity", add_ok, worst_add, add_w);

  const std::vector<complex> lambdas = {complex(0.0), complex(2.5),
                                        complex(0.0, 1.0), complex(-1.0, 0.5)};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& a = samples[i].a();
    auto ma = detail::as_mixed(model, a);
    for (complex lam : lambdas) {
      // phi'(lambda a) realized through the mixed element (a, lambda*1, 0).
      MixedElement ml(model, a,
                      BoundedFunction::constant(model.grid(), lam),
                      BoundedFunction::constant(model.grid(), 0.0));
      for (auto ch : chars) {
        ExtendedValue va = phi_prime(model, ch, ma);
        ExtendedValue vl = phi_prime(model, ch, ml);
        ExtendedValue expect = lam * va;  // 0 * inf = 0 convention
        if (!vl.same_tag(expect)) {
          hom_ok = false;
          hom_w = "sample " + std::to_string(i);
        } else if (vl.is_finite()) {
          double gap = std::abs(vl.value() - expect.value());
          if (gap > worst_hom) worst_hom = gap;
          if (gap > tol_abs) {
            hom_ok = false;
            hom_w = "sample " + std::to_string(i);
          }
        }
      }
    }
  }
  rep.add("gelfand", "homogeneity", hom_ok, worst_hom, hom_w);

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& m = samples[i];
    auto ma = detail::as_mixed(model, m.a());
    for (auto ch : chars) {
      ExtendedValue va = phi_prime(model, ch, ma);
      complex px = m.x()[ch.index];
      if (va.is_infinite() && std::abs(px) <= tol::kDenominatorZero) {
        ++indeterminate;  // inf * 0: the paper leaves this value open
        continue;
      }
      ExtendedValue lhs = phi_prime(model, ch, m);
      ExtendedValue rhs = (px * va) + ExtendedValue::finite(m.y()[ch.index]);
      if (!lhs.same_tag(rhs)) {
        prod_ok = false;
        prod_w = "sample " + std::to_string(i) + " char " +
                 std::to_string(ch.index);
      } else if (lhs.is_finite()) {
        double gap = std::abs(lhs.value() - rhs.value());
        if (gap > worst_prod) worst_prod = gap;
        if (gap > tol_abs) {
          prod_ok = false;
          prod_w = "sample " + std::to_string(i) + " char " +
                   std::to_string(ch.index);
        }
      }
    }
  }
  rep.add("gelfand", "product-law", prod_ok, worst_prod, prod_w);
  rep.add("gelfand", "indeterminate-cases", true,
          static_cast<double>(indeterminate), "inf*0 guard");

  // Lemma 5.1(2): (i) phi((1+a|x|)^{-1}) = 0 implies phi((1+a)^{-1}) = 0;
  // (ii) phi((1+a)^{-1}) = 0 and phi(x) != 0 imply phi((1+a|x|)^{-1}) = 0.
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& m = samples[i];
    BoundedFunction inv_ax = model.invert_one_plus(m.a_abs_x());
    BoundedFunction inv_a = model.invert_one_plus(m.a());
    for (auto ch : chars) {
      double dax = std::abs(inv_ax[ch.index]);
      double da = std::abs(inv_a[ch.index]);
      double px = std::abs(m.x()[ch.index]);
      if (dax <= tol::kDenominatorZero && da > tol::kDenominatorZero) {
        lemma_ok = false;
        lemma_w = "(i) sample " + std::to_string(i);
      }
      if (da <= tol::kDenominatorZero && px > tol::kDenominatorZero &&
          dax > tol::kDenominatorZero) {
        lemma_ok = false;
        lemma_w = "(ii) sample " + std::to_string(i);
      }
    }
  }
  rep.add("gelfand", "lemma5.1(2)", lemma_ok, 0.0, lemma_w);

  return rep;
}

// Theorem 5.8 wedge-isomorphism checks for Phi = transform: injectivity on
// the samples, additivity and nonnegative homogeneity on quasi-positives,
// the isometric restriction to A0, and the four product laws on the set of
// characters where every factor is finite.
inline Report wedge_iso_check(const CommutativeModel& model,
                              const std::vector<MixedElement>& samples,
                              double tol_abs = 1e-10) {
  Report rep;
  const auto& grid = model.grid();

  // Injectivity: pointwise-distinct inputs map to distinct functions.
  {
    bool ok = true;
    std::string w;
    std::vector<ExtendedFunction> images;
    images.reserve(samples.size());
    for (const auto& m : samples) images.push_back(transform(model, m));
    for (std::size_t i = 0; i < samples.size() && ok; ++i)
      for (std::size_t j = i + 1; j < samples.size(); ++j) {
        bool same_input = true;
        for (std::size_t t = 0; t < grid.size() && same_input; ++t) {
          ExtendedValue vi = complex(samples[i].x()[t]) * samples[i].a()[t] +
                             ExtendedValue::finite(samples[i].y()[t]);
          ExtendedValue vj = complex(samples[j].x()[t]) * samples[j].a()[t] +
                             ExtendedValue::finite(samples[j].y()[t]);
          if (!vi.same_tag(vj) ||
              (vi.is_finite() && std::abs(vi.value() - vj.value()) > 1e-15))
            same_input = false;
        }
        if (!same_input && images[i].same_as(images[j], 1e-15)) {
          ok = false;
          w = "pair " + std::to_string(i) + "," + std::to_string(j);
          break;
        }
      }
    rep.add("wedge-iso", "injectivity", ok, 0.0, w);
  }

  // Additivity and nonnegative homogeneity on the quasi-positive wedge.
  {
    bool ok = true;
    double worst = 0.0;
    std::string w;
    for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
      const auto& a = samples[i].a();
      const auto& b = samples[i + 1].a();
      auto fa = transform(model, detail::as_mixed(model, a));
      auto fb = transform(model, detail::as_mixed(model, b));
      auto fs = transform(model,
                          detail::as_mixed(model, model.wedge_add(a, b)));
      auto f2 = transform(model,
                          detail::as_mixed(model, model.wedge_scale(2.0, a)));
      for (std::size_t t = 0; t < grid.size(); ++t) {
        ExtendedValue es = fa[t] + fb[t];
        if (!fs[t].same_tag(es)) { ok = false; w = "add " + std::to_string(i); }
        else if (fs[t].is_finite())
          worst = std::max(worst, std::abs(fs[t].value() - es.value()));
        ExtendedValue eh = complex(2.0) * fa[t];
        if (!f2[t].same_tag(eh)) { ok = false; w = "hom " + std::to_string(i); }
        else if (f2[t].is_finite())
          worst = std::max(worst, std::abs(f2[t].value() - eh.value()));
      }
    }
    if (worst > tol_abs) ok = false;
    rep.add("wedge-iso", "wedge-linearity", ok, worst, ok ? "" : w);
  }

  // Isometry on A0: sup over characters of |Phi(x)| equals |x|_0 exactly,
  // and Phi intertwines the involution.
  {
    bool ok = true;
    double worst = 0.0;
    std::string w;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& x = samples[i].x();
      MixedElement mx(model, model.embed(BoundedFunction::constant(grid, 0.0)),
                      BoundedFunction::constant(grid, 0.0), x);
      auto fx = transform(model, mx);
      double gap = std::abs(fx.finite_sup() - sup_norm(x));
      worst = std::max(worst, gap);
      if (gap != 0.0) { ok = false; w = "sample " + std::to_string(i); }
      MixedElement mxs(model, model.embed(BoundedFunction::constant(grid, 0.0)),
                       BoundedFunction::constant(grid, 0.0), x.conj());
      if (!transform(model, mxs).same_as(fx.pointwise_conj(), 1e-15)) {
        ok = false;
        w = "involution sample " + std::to_string(i);
      }
    }
    rep.add("wedge-iso", "isometry-on-A0", ok, worst, w);
  }

  // The four product laws of Theorem 5.8(2)(iii), on characters where all
  // factors are finite.
  {
    bool ok = true;
    double worst = 0.0;
    std::string w;
    for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
      const auto& a = samples[i].a();
      const auto& b = samples[i + 1].a();
      const auto& x1 = samples[i].x();
      const auto& x2 = samples[i + 1].x();
      auto zero = BoundedFunction::constant(grid, 0.0);
      auto fa = transform(model, detail::as_mixed(model, a));
      auto fb = transform(model, detail::as_mixed(model, b));
      auto f_ax = transform(model, MixedElement(model, a, x1, zero));
      auto f_abx = transform(
          model, MixedElement(model, model.wedge_add(a, b), x1, zero));
      auto f_lax = transform(
          model, MixedElement(model, a, complex(3.0, 0.0) * x1, zero));
      auto f_ax12 = transform(model, MixedElement(model, a, x1 + x2, zero));
      for (std::size_t t = 0; t < grid.size(); ++t) {
        if (fa[t].is_infinite() || fb[t].is_infinite()) continue;
        complex va = fa[t].value(), vb = fb[t].value();
        complex vx1 = x1[t], vx2 = x2[t];
        auto chk = [&](const ExtendedValue& got, complex expect,
                       const char* label) {
          if (got.is_infinite()) { ok = false; w = label; return; }
          double gap = std::abs(got.value() - expect);
          worst = std::max(worst, gap);
          if (gap > tol_abs) { ok = false; w = label; }
        };
        chk(f_ax[t], va * vx1, "Phi(ax)");
        chk(f_abx[t], (va + vb) * vx1, "Phi((a+b)x)");
        chk(f_lax[t], complex(3.0) * va * vx1, "Phi(lambda ax)");
        chk(f_ax12[t], va * (vx1 + vx2), "Phi(a(x1+x2))");
      }
    }
    rep.add("wedge-iso", "product-laws", ok, worst, ok ? "" : w);
  }

  return rep;
}

}  // namespace qcstar
