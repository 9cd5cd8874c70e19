#pragma once

// Closed forms for two identical rectangular barriers written in terms of
// (k, q, alpha, a, l) only, so the relativistic and Schroedinger problems
// share them. Every hyperbolic function of x = qa appears multiplied by
// e^{-x}:
//   s = sinh(x) e^{-x} = (1 - e^{-2x})/2,   c = cosh(x) e^{-x} = (1 + e^{-2x})/2.

#include <cmath>
#include <complex>

namespace dtunnel::detail {

using Complex = std::complex<double>;

struct ScaledHyperbolics {
  double x;    // qa
  double s;    // sinh(x) e^{-x}
  double c;    // cosh(x) e^{-x}
  double eps;  // e^{-2x}

  explicit ScaledHyperbolics(double qa)
      : x(qa), s(-0.5 * std::expm1(-2.0 * qa)), c(0.5 * (1.0 + std::exp(-2.0 * qa))),
        eps(std::exp(-2.0 * qa)) {}

  double sinh2x() const noexcept { return 2.0 * s * c; }      // sinh(2x) e^{-2x}
  double cosh2x() const noexcept { return c * c + s * s; }    // cosh(2x) e^{-2x}
  double sinh4x() const noexcept { return -0.5 * std::expm1(-8.0 * x); }  // sinh(4x) e^{-4x}
};

struct Shape {
  double k;
  double q;
  double alpha;
  double a;
  double l;
};

/// Bracket of the transmission denominator divided by e^{2qa}:
/// (c + i beta s)^2 + gamma^2 s^2 e^{2ikl}.
inline Complex scaled_denominator(const Shape& p, const ScaledHyperbolics& h) {
  const double beta = (1.0 - p.alpha * p.alpha) / (2.0 * p.alpha);
  const double gamma = (1.0 + p.alpha * p.alpha) / (2.0 * p.alpha);
  const Complex first(h.c, beta * h.s);
  return first * first + gamma * gamma * h.s * h.s * std::polar(1.0, 2.0 * p.k * p.l);
}

/// e^{2qa} T, which is O(1) for any opacity.
inline Complex scaled_transmission(const Shape& p, const ScaledHyperbolics& h) {
  return std::polar(1.0, -2.0 * p.k * p.a) / scaled_denominator(p, h);
}

inline Complex transmission(const Shape& p) {
  const ScaledHyperbolics h(p.q * p.a);
  return scaled_transmission(p, h) * h.eps;
}

inline Complex reflection(const Shape& p) {
  const ScaledHyperbolics h(p.q * p.a);
  const double beta = (1.0 - p.alpha * p.alpha) / (2.0 * p.alpha);
  const double two_gamma = (1.0 + p.alpha * p.alpha) / p.alpha;
  const double kl = p.k * p.l;
  const double bracket = std::cos(kl) * h.c + beta * std::sin(kl) * h.s;
  // e^{i[k(2a+l) - pi/2]} = -i e^{ik(2a+l)}
  const Complex prefactor = Complex(0.0, -1.0) * std::polar(1.0, p.k * (2.0 * p.a + p.l));
  return prefactor * two_gamma * h.s * bracket * scaled_transmission(p, h);
}

struct PhasePair {
  double numerator;
  double denominator;
};

/// Numerator and denominator of the arctangent in phi_t, both divided by
/// e^{2qa} (a positive factor, so atan2 is unaffected).
inline PhasePair phase_pair(const Shape& p) {
  const ScaledHyperbolics h(p.q * p.a);
  const double a2 = p.alpha * p.alpha;
  const double plus2 = (1.0 + a2) * (1.0 + a2);
  const double minus2 = (1.0 - a2) * (1.0 - a2);
  const double two_kl = 2.0 * p.k * p.l;
  // 1 + cosh 2x = 2 cosh^2 x, 1 - cosh 2x = -2 sinh^2 x, sinh 2x = 2 sinh x cosh x.
  const double num = 8.0 * p.alpha * (1.0 - a2) * h.s * h.c + 2.0 * plus2 * std::sin(two_kl) * h.s * h.s;
  const double den = 8.0 * a2 * h.c * h.c - 2.0 * h.s * h.s * (minus2 - plus2 * std::cos(two_kl));
  return {num, den};
}

/// Principal-branch phi_t = kl - atan2(num, den).
inline double phase(const Shape& p) {
  const PhasePair pair = phase_pair(p);
  return p.k * p.l - std::atan2(pair.numerator, pair.denominator);
}

}  // namespace dtunnel::detail
