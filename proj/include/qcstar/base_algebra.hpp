#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>

#include "qcstar/grid.hpp"
#include "qcstar/scalar_function.hpp"

namespace qcstar {

// C*-norm of A0: the sup norm over the grid. Satisfies the C*-identity
// sup|x* x| = (sup|x|)^2 exactly on this model.
inline double sup_norm(const BoundedFunction& x) {
  double m = 0.0;
  for (const complex& v : x.values()) m = std::max(m, std::abs(v));
  return m;
}

inline bool is_hermitian(const BoundedFunction& x,
                         double imag_tol = tol::kHermitianImag) {
  double scale = std::max(1.0, sup_norm(x));
  for (const complex& v : x.values())
    if (std::abs(v.imag()) > imag_tol * scale) return false;
  return true;
}

inline bool is_positive(const BoundedFunction& x) {
  if (!is_hermitian(x)) return false;
  double t = std::max(tol::kPositivityRel * sup_norm(x), tol::kPositivityFloor);
  for (const complex& v : x.values())
    if (v.real() < -t) return false;
  return true;
}

struct HermitianParts {
  BoundedFunction plus;
  BoundedFunction minus;
  BoundedFunction abs;
};

// x = x_+ - x_- with x_+ x_- = 0 pointwise and |x| = x_+ + x_-.
inline HermitianParts decompose_hermitian(const BoundedFunction& x) {
  if (!is_hermitian(x)) throw NonHermitian("decompose_hermitian: x not hermitian");
  std::vector<complex> p(x.size()), m(x.size()), a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = x[i].real();
    p[i] = std::max(r, 0.0);
    m[i] = std::max(-r, 0.0);
    a[i] = std::abs(r);
  }
  return {BoundedFunction(std::move(p)), BoundedFunction(std::move(m)),
          BoundedFunction(std::move(a))};
}

// Continuous functional calculus on a hermitian element: h applied pointwise.
inline BoundedFunction continuous_calculus(const BoundedFunction& x,
                                           const ScalarFunction& h) {
  if (!is_hermitian(x)) throw NonHermitian("continuous_calculus: x not hermitian");
  std::vector<complex> v(x.size());
  double clamp = std::max(tol::kPositivityRel * sup_norm(x), tol::kPositivityFloor);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = x[i].real();
    // roundoff guard: values within positivity tolerance of 0 are treated as 0
    // when h is only defined on [0, inf)
    if (r < 0.0 && r >= -clamp && !h.defined_at(r) && h.defined_at(0.0)) r = 0.0;
    if (!h.defined_at(r))
      throw DomainError("continuous_calculus: h undefined at a value of x");
    v[i] = h.eval(r);
  }
  return BoundedFunction(std::move(v));
}

inline complex evaluate(const Character& phi, const BoundedFunction& x) {
  if (phi.index >= x.size()) throw InvariantViolation("character out of range");
  return x[phi.index];
}

}  // namespace qcstar
