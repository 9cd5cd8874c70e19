#pragma once

// Small numerical toolkit shared by the oracle, the time scales and the
// sweep drivers.

#include <cmath>
#include <functional>
#include <optional>

#include "dtunnel/errors.hpp"

namespace dtunnel {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Default relative step for energy derivatives.
inline constexpr double kDerivativeRelStep = 1e-6;

/// Central difference with step h = rel_step * |x|, Richardson-extrapolated
/// once: (4 D(h/2) - D(h)) / 3.
template <class F>
double richardson_derivative(F&& f, double x, double rel_step = kDerivativeRelStep) {
  const double h = rel_step * (x != 0.0 ? std::abs(x) : 1.0);
  if (!(x + 0.5 * h > x) || !(x - 0.5 * h < x)) {
    throw DerivativeStepError("derivative step underflows at x");
  }
  const double d_full = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d_half = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d_half - d_full) / 3.0;
}

/// Continues a phase along an ordered sequence by adding the multiple of 2*pi
/// that brings each new principal value closest to the previous one.
class PhaseContinuation {
 public:
  PhaseContinuation() = default;
  explicit PhaseContinuation(double reference) : last_(reference) {}

  double operator()(double principal);

  std::optional<double> last() const noexcept { return last_; }
  void reset() noexcept { last_.reset(); }

 private:
  std::optional<double> last_;
};

/// Nearest branch of `principal` to `reference`.
double continue_phase(double principal, double reference) noexcept;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive Simpson on [lo, hi] with relative tolerance. The returned value
/// carries the Richardson correction (S2 - S1)/15 on every accepted panel;
/// the error estimate is the sum of |S2 - S1|/15. Throws QuadratureError when
/// the recursion depth is exhausted before the tolerance is met.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double lo,
                                  double hi, double rel_tol, int max_depth = 48);

struct MinimizeResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Golden-section search for a minimum of a unimodal f on [lo, hi], stopping
/// once the bracket is narrower than x_tol.
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double x_tol, int max_iterations = 200);

}  // namespace dtunnel
