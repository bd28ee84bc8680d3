#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qcstar/common.hpp"

namespace qcstar {

// Discretized compact Hausdorff space. For the interval model the points are
// a uniform sample of [a,b] with trapezoidal quadrature weights, so that the
// weights sum to the measure b-a. The characters of the function algebra on
// the grid are exactly the point evaluations.
class CompactGrid {
 public:
  CompactGrid(std::vector<double> points, std::vector<double> weights,
              double measure)
      : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.size() < 2 || points_.size() != weights_.size())
      throw InvariantViolation("CompactGrid: need >= 2 points with weights");
    double sum = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (i > 0 && !(points_[i] > points_[i - 1]))
        throw InvariantViolation("CompactGrid: points must strictly increase");
      if (!(weights_[i] > 0.0))
        throw InvariantViolation("CompactGrid: weights must be positive");
      sum += weights_[i];
    }
    if (std::abs(sum - measure) > 1e-12 * std::max(1.0, std::abs(measure)))
      throw InvariantViolation("CompactGrid: weights do not match measure");
    measure_ = measure;
  }

  static CompactGrid interval(double a, double b, std::size_t n) {
    if (n < 2) throw InvariantViolation("CompactGrid: n >= 2 required");
    const double h = (b - a) / static_cast<double>(n - 1);
    std::vector<double> pts(n), w(n, h);
    for (std::size_t i = 0; i < n; ++i) pts[i] = a + h * static_cast<double>(i);
    pts.back() = b;
    w.front() = w.back() = h / 2.0;
    // renormalize so the weights sum exactly to b-a
    double sum = 0.0;
    for (double wi : w) sum += wi;
    const double scale = (b - a) / sum;
    for (double& wi : w) wi *= scale;
    return CompactGrid(std::move(pts), std::move(w), b - a);
  }

  // Grid whose points are spectrum samples (eigenvalues); the "measure" is
  // just the total weight. Used by the operator-model bridge.
  static CompactGrid from_spectrum(std::vector<double> values,
                                   std::vector<double> multiplicities) {
    double total = 0.0;
    for (double m : multiplicities) total += m;
    return CompactGrid(std::move(values), std::move(multiplicities), total);
  }

  std::size_t size() const { return points_.size(); }
  double point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double measure() const { return measure_; }
  double spacing() const {
    double h = points_[1] - points_[0];
    for (std::size_t i = 2; i < points_.size(); ++i)
      h = std::min(h, points_[i] - points_[i - 1]);
    return h;
  }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  bool operator==(const CompactGrid& o) const {
    return points_ == o.points_ && weights_ == o.weights_;
  }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  double measure_ = 0.0;
};

// Element of the C*-algebra A0: one finite complex value per grid point.
class BoundedFunction {
 public:
  explicit BoundedFunction(std::vector<complex> values)
      : values_(std::move(values)) {
    for (const complex& v : values_)
      if (!(std::abs(v) < tol::kFiniteBound))
        throw InvariantViolation("BoundedFunction: non-finite value");
  }

  static BoundedFunction constant(const CompactGrid& grid, complex c) {
    return BoundedFunction(std::vector<complex>(grid.size(), c));
  }
  template <typename F>
  static BoundedFunction sample(const CompactGrid& grid, F&& f) {
    std::vector<complex> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = complex(f(grid.point(i)));
    return BoundedFunction(std::move(v));
  }

  std::size_t size() const { return values_.size(); }
  const complex& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<complex>& values() const { return values_; }

  BoundedFunction conj() const {
    std::vector<complex> v(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) v[i] = std::conj(values_[i]);
    return BoundedFunction(std::move(v));
  }

  friend BoundedFunction operator+(const BoundedFunction& a,
                                   const BoundedFunction& b) {
    return zip(a, b, [](complex x, complex y) { return x + y; });
  }
  friend BoundedFunction operator-(const BoundedFunction& a,
                                   const BoundedFunction& b) {
    return zip(a, b, [](complex x, complex y) { return x - y; });
  }
  friend BoundedFunction operator*(const BoundedFunction& a,
                                   const BoundedFunction& b) {
    return zip(a, b, [](complex x, complex y) { return x * y; });
  }
  friend BoundedFunction operator*(complex c, const BoundedFunction& a) {
    std::vector<complex> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = c * a[i];
    return BoundedFunction(std::move(v));
  }

 private:
  template <typename F>
  static BoundedFunction zip(const BoundedFunction& a, const BoundedFunction& b,
                             F&& f) {
    if (a.size() != b.size())
      throw InvariantViolation("BoundedFunction: size mismatch");
    std::vector<complex> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = f(a[i], b[i]);
    return BoundedFunction(std::move(v));
  }

  std::vector<complex> values_;
};

// Point-evaluation character of the grid algebra.
struct Character {
  std::size_t index;
};

}  // namespace qcstar
