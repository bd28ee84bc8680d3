#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qcstar/common.hpp"

namespace qcstar {

// Scalar functions on [0, inf) from a fixed catalog. Each closed form carries
// its exact growth exponent g (f(l) = O(l^g) as l -> inf), which is what the
// functional-calculus class decision needs; the grid never samples l = inf.
//
// Forms:
//   PowRes  : c * l^q * (1+l)^(-m)          growth q - m
//   Poly    : c0 + c1 l + ... + cd l^d      growth d
//   ExpNeg  : c * exp(-r l), r > 0          growth -inf (bounded, all moments)
//   Table   : sampled values, linear interpolation, clamped outside; bounded
class ScalarFunction {
 public:
  struct PowRes {
    double coeff = 1.0;
    double q = 0.0;  // power of l
    double m = 0.0;  // power of (1+l)^-1
  };
  struct Poly {
    std::vector<double> coeffs;  // c0 + c1 l + ...
  };
  struct ExpNeg {
    double coeff = 1.0;
    double rate = 1.0;
  };
  struct Table {
    std::vector<double> xs;  // strictly increasing
    std::vector<double> ys;
  };

  static ScalarFunction identity() { return ScalarFunction(PowRes{1.0, 1.0, 0.0}); }
  static ScalarFunction one() { return ScalarFunction(PowRes{1.0, 0.0, 0.0}); }
  static ScalarFunction power(double q, double coeff = 1.0) {
    return ScalarFunction(PowRes{coeff, q, 0.0});
  }
  static ScalarFunction resolvent_power(double m, double coeff = 1.0) {
    return ScalarFunction(PowRes{coeff, 0.0, m});
  }
  static ScalarFunction pow_res(double q, double m, double coeff = 1.0) {
    return ScalarFunction(PowRes{coeff, q, m});
  }
  static ScalarFunction poly(std::vector<double> coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    return ScalarFunction(Poly{std::move(coeffs)});
  }
  static ScalarFunction exp_neg(double rate = 1.0, double coeff = 1.0) {
    if (!(rate > 0.0)) throw DomainError("exp_neg: rate must be positive");
    return ScalarFunction(ExpNeg{coeff, rate});
  }
  static ScalarFunction table(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
      throw DomainError("table: need >= 2 samples");
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1])) throw DomainError("table: xs must increase");
    return ScalarFunction(Table{std::move(xs), std::move(ys)});
  }

  bool defined_at(double lambda) const {
    if (const auto* p = std::get_if<PowRes>(&form_)) {
      if (lambda > 0.0) return true;
      if (lambda == 0.0) return p->q >= 0.0;
      // negative arguments need integer exponents
      auto is_int = [](double v) { return v == std::floor(v); };
      return is_int(p->q) && p->q >= 0.0 && is_int(p->m) && lambda != -1.0;
    }
    return true;
  }

  double eval(double lambda) const {
    if (const auto* p = std::get_if<PowRes>(&form_)) {
      if (!defined_at(lambda))
        throw DomainError("pow: undefined at this argument");
      double v = p->coeff;
      if (p->q != 0.0) v *= std::pow(lambda, p->q);
      if (p->m != 0.0) v *= std::pow(1.0 + lambda, -p->m);
      return v;
    }
    if (const auto* p = std::get_if<Poly>(&form_)) {
      double v = 0.0;
      for (std::size_t i = p->coeffs.size(); i-- > 0;)
        v = v * lambda + p->coeffs[i];
      return v;
    }
    if (const auto* p = std::get_if<ExpNeg>(&form_))
      return p->coeff * std::exp(-p->rate * lambda);
    const auto& t = std::get<Table>(form_);
    if (lambda <= t.xs.front()) return t.ys.front();
    if (lambda >= t.xs.back()) return t.ys.back();
    auto it = std::upper_bound(t.xs.begin(), t.xs.end(), lambda);
    std::size_t i = static_cast<std::size_t>(it - t.xs.begin());
    double u = (lambda - t.xs[i - 1]) / (t.xs[i] - t.xs[i - 1]);
    return t.ys[i - 1] * (1.0 - u) + t.ys[i] * u;
  }

  // Exact growth exponent at infinity for closed forms; 0 for tables.
  double growth_exponent() const {
    if (const auto* p = std::get_if<PowRes>(&form_)) return p->q - p->m;
    if (const auto* p = std::get_if<Poly>(&form_))
      return static_cast<double>(p->coeffs.size() - 1);
    if (std::holds_alternative<ExpNeg>(form_)) return -1e9;
    return 0.0;
  }

  // Continuous extension at lambda = inf; nullopt means divergent.
  std::optional<double> limit_at_infinity() const {
    if (const auto* p = std::get_if<PowRes>(&form_)) {
      if (p->q > p->m) return std::nullopt;
      if (p->q < p->m) return 0.0;
      return p->coeff;
    }
    if (const auto* p = std::get_if<Poly>(&form_)) {
      if (p->coeffs.size() > 1) return std::nullopt;
      return p->coeffs.empty() ? 0.0 : p->coeffs[0];
    }
    if (std::holds_alternative<ExpNeg>(form_)) return 0.0;
    return std::get<Table>(form_).ys.back();
  }

  bool bounded_at_infinity() const { return limit_at_infinity().has_value(); }

  // Largest k with sup l^k f(l) < inf over [0, inf); used by the
  // physical-topology F-class check. Returns a large value for exp decay.
  double decay_order() const {
    if (const auto* p = std::get_if<PowRes>(&form_)) return p->m - p->q;
    if (const auto* p = std::get_if<Poly>(&form_))
      return p->coeffs.size() > 1 ? -1.0 : 0.0;
    if (std::holds_alternative<ExpNeg>(form_)) return 1e9;
    return 0.0;  // tables clamp to their last value
  }

  // Pointwise product where the catalog is closed under it.
  static std::optional<ScalarFunction> mul(const ScalarFunction& a,
                                           const ScalarFunction& b) {
    if (const auto* pa = std::get_if<PowRes>(&a.form_))
      if (const auto* pb = std::get_if<PowRes>(&b.form_))
        return pow_res(pa->q + pb->q, pa->m + pb->m, pa->coeff * pb->coeff);
    if (const auto* pa = std::get_if<Poly>(&a.form_))
      if (const auto* pb = std::get_if<Poly>(&b.form_)) {
        std::vector<double> c(pa->coeffs.size() + pb->coeffs.size() - 1, 0.0);
        for (std::size_t i = 0; i < pa->coeffs.size(); ++i)
          for (std::size_t j = 0; j < pb->coeffs.size(); ++j)
            c[i + j] += pa->coeffs[i] * pb->coeffs[j];
        return poly(std::move(c));
      }
    if (const auto* pa = std::get_if<ExpNeg>(&a.form_))
      if (const auto* pb = std::get_if<ExpNeg>(&b.form_))
        return exp_neg(pa->rate + pb->rate, pa->coeff * pb->coeff);
    return std::nullopt;
  }

  // Pointwise sum where the catalog is closed under it.
  static std::optional<ScalarFunction> add(const ScalarFunction& a,
                                           const ScalarFunction& b) {
    if (const auto* pa = std::get_if<PowRes>(&a.form_))
      if (const auto* pb = std::get_if<PowRes>(&b.form_))
        if (pa->q == pb->q && pa->m == pb->m)
          return pow_res(pa->q, pa->m, pa->coeff + pb->coeff);
    if (const auto* pa = std::get_if<Poly>(&a.form_))
      if (const auto* pb = std::get_if<Poly>(&b.form_)) {
        std::vector<double> c(std::max(pa->coeffs.size(), pb->coeffs.size()), 0.0);
        for (std::size_t i = 0; i < pa->coeffs.size(); ++i) c[i] += pa->coeffs[i];
        for (std::size_t i = 0; i < pb->coeffs.size(); ++i) c[i] += pb->coeffs[i];
        return poly(std::move(c));
      }
    return std::nullopt;
  }

  ScalarFunction scaled(double c) const {
    ScalarFunction r = *this;
    if (auto* p = std::get_if<PowRes>(&r.form_)) p->coeff *= c;
    else if (auto* p2 = std::get_if<Poly>(&r.form_))
      for (double& ci : p2->coeffs) ci *= c;
    else if (auto* p3 = std::get_if<ExpNeg>(&r.form_)) p3->coeff *= c;
    else
      for (double& y : std::get<Table>(r.form_).ys) y *= c;
    return r;
  }

  std::string name() const {
    std::ostringstream os;
    if (const auto* p = std::get_if<PowRes>(&form_)) {
      os << p->coeff << "*l^" << p->q << "*(1+l)^-" << p->m;
    } else if (const auto* p2 = std::get_if<Poly>(&form_)) {
      os << "poly[";
      for (std::size_t i = 0; i < p2->coeffs.size(); ++i)
        os << (i ? "," : "") << p2->coeffs[i];
      os << "]";
    } else if (const auto* p3 = std::get_if<ExpNeg>(&form_)) {
      os << p3->coeff << "*exp(-" << p3->rate << "l)";
    } else {
      os << "table[" << std::get<Table>(form_).xs.size() << "]";
    }
    return os.str();
  }

 private:
  using Form = std::variant<PowRes, Poly, ExpNeg, Table>;
  explicit ScalarFunction(Form f) : form_(std::move(f)) {}
  Form form_;
};

}  // namespace qcstar
