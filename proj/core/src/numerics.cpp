#include "dtunnel/numerics.hpp"

#include <cmath>
#include <string>

namespace dtunnel {

double continue_phase(double principal, double reference) noexcept {
  const double turns = std::round((reference - principal) / kTwoPi);
  return principal + turns * kTwoPi;
}

double PhaseContinuation::operator()(double principal) {
  const double value = last_ ? continue_phase(principal, *last_) : principal;
  last_ = value;
  return value;
}

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  double abs_tol;
  int max_depth;
  long evaluations = 0;
  double error = 0.0;
  bool exhausted = false;
};

double simpson_recurse(SimpsonState& st, double lo, double hi, double f_lo, double f_mid,
                       double f_hi, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left_mid = 0.5 * (lo + mid);
  const double right_mid = 0.5 * (mid + hi);
  const double f_lm = st.f(left_mid);
  const double f_rm = st.f(right_mid);
  st.evaluations += 2;
  const double h = hi - lo;
  const double left = h / 12.0 * (f_lo + 4.0 * f_lm + f_mid);
  const double right = h / 12.0 * (f_mid + 4.0 * f_rm + f_hi);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth >= st.max_depth) {
    if (std::abs(delta) > 15.0 * tol) st.exhausted = true;
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(st, lo, mid, f_lo, f_lm, f_mid, left, 0.5 * tol, depth + 1) +
         simpson_recurse(st, mid, hi, f_mid, f_rm, f_hi, right, 0.5 * tol, depth + 1);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double lo,
                                  double hi, double rel_tol, int max_depth) {
  QuadratureResult result;
  if (hi == lo) return result;
  if (!(hi > lo) || !(rel_tol > 0.0)) {
    throw QuadratureError("adaptive_simpson needs lo < hi and a positive tolerance");
  }

  // Scale estimate from a fixed composite rule, so the relative tolerance
  // refers to the integral rather than to a possibly unlucky first panel.
  constexpr int kPanels = 16;
  const double step = (hi - lo) / kPanels;
  double scale = 0.0;
  for (int i = 0; i <= kPanels; ++i) {
    const double w = (i == 0 || i == kPanels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    scale += w * std::abs(f(lo + i * step));
  }
  scale *= step / 3.0;
  result.evaluations += kPanels + 1;

  SimpsonState st{f, rel_tol * (scale > 0.0 ? scale : 1.0), max_depth};
  double value = 0.0;
  // Start from the same panels so that narrow features are not skipped.
  for (int i = 0; i < kPanels; ++i) {
    const double a = lo + i * step;
    const double b = (i == kPanels - 1) ? hi : a + step;
    const double fa = f(a);
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    st.evaluations += 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    value += simpson_recurse(st, a, b, fa, fm, fb, whole, st.abs_tol / kPanels, 0);
  }
  if (st.exhausted || !std::isfinite(value)) {
    throw QuadratureError("adaptive Simpson did not converge (max depth " +
                          std::to_string(max_depth) + ")");
  }
  result.value = value;
  result.error_estimate = st.error;
  result.evaluations += st.evaluations;
  return result;
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double x_tol, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iterations && (b - a) > x_tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  MinimizeResult r;
  r.x = fc < fd ? c : d;
  r.fx = fc < fd ? fc : fd;
  r.iterations = it;
  return r;
}

}  // namespace dtunnel
