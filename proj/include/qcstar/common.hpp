#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qcstar {

using complex = std::complex<double>;

// Default tolerances used across the library. Callers may override the
// relative positivity tolerance per call; everything else is fixed.
namespace tol {
inline constexpr double kFiniteBound = 1e300;     // magnitudes beyond this are invalid
inline constexpr double kPositivityRel = 1e-12;   // relative positivity slack
inline constexpr double kPositivityFloor = 1e-14;
inline constexpr double kHermitianImag = 1e-12;   // imaginary part tolerance
inline constexpr double kDenominatorZero = 1e-13; // phi' infinity branch
inline constexpr double kTauConvergence = 1e-8;   // seminorm convergence test
inline constexpr double kCauchyDecay = 0.75;      // geometric decay factor
inline constexpr int kCauchyWindow = 5;
inline constexpr int kCauchyMaxSteps = 40;
}  // namespace tol

struct NonHermitian : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotQuasiPositive : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotMultipliable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInClass : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnboundedOnSupport : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotPositive : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInvariant : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotContinuous : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FClassViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Single seeded generator threaded through all sampling code so that a fixed
// seed reproduces every report byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double normal(double mean = 0.0, double stddev = 1.0) {
    return std::normal_distribution<double>(mean, stddev)(gen_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_);
  }
  complex complex_uniform(double scale = 1.0) {
    return {uniform(-scale, scale), uniform(-scale, scale)};
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qcstar
