#pragma once

#include <cmath>

#include "qcstar/common.hpp"

namespace qcstar {

// A point of the extended complex plane C* = C u {inf}. Arithmetic follows
// the conventions fixed in the text: inf + z = inf, c*inf = inf for c != 0,
// and 0*inf = 0. inf*inf is allowed only where a limit construction backs it;
// plain element arithmetic rejects it.
class ExtendedValue {
 public:
  ExtendedValue() : finite_(true), value_(0.0) {}
  static ExtendedValue finite(complex v) {
    if (!(std::abs(v) < tol::kFiniteBound))
      throw InvariantViolation("ExtendedValue: finite payload too large");
    ExtendedValue e;
    e.finite_ = true;
    e.value_ = v;
    return e;
  }
  static ExtendedValue infinity() {
    ExtendedValue e;
    e.finite_ = false;
    return e;
  }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }
  complex value() const {
    if (!finite_) throw DomainError("ExtendedValue: infinite has no payload");
    return value_;
  }

  ExtendedValue conj() const {
    return finite_ ? finite(std::conj(value_)) : infinity();
  }

  friend ExtendedValue operator+(const ExtendedValue& a, const ExtendedValue& b) {
    if (a.finite_ && b.finite_) return finite(a.value_ + b.value_);
    return infinity();  // inf + anything = inf
  }

  // Scalar multiple with 0 * inf = 0.
  friend ExtendedValue operator*(complex c, const ExtendedValue& a) {
    if (a.finite_) return finite(c * a.value_);
    if (c == complex(0.0)) return finite(0.0);
    return infinity();
  }

  // Product of two extended values; inf * inf is rejected.
  friend ExtendedValue operator*(const ExtendedValue& a, const ExtendedValue& b) {
    if (a.finite_ && b.finite_) return finite(a.value_ * b.value_);
    if (a.finite_) return a.value_ * b;
    if (b.finite_) return b.value_ * a;
    throw DomainError("ExtendedValue: inf * inf has no defined value here");
  }

  // Product as a pointwise limit of regularized factors: inf * inf = inf.
  static ExtendedValue limit_product(const ExtendedValue& a,
                                     const ExtendedValue& b) {
    if (a.is_infinite() && b.is_infinite()) return infinity();
    return a * b;
  }

  bool same_tag(const ExtendedValue& o) const { return finite_ == o.finite_; }

 private:
  bool finite_;
  complex value_{};
};

}  // namespace qcstar
