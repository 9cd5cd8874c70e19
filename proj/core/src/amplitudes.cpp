#include "dtunnel/amplitudes.hpp"

#include <cmath>

#include "detail/double_barrier_forms.hpp"

namespace dtunnel {

namespace {

detail::Shape shape_of(const KinematicPoint& p, const BarrierSystem& system) {
  return {p.k, p.q, p.alpha, system.a, system.l};
}

}  // namespace

Complex transmission(double E, const BarrierSystem& system) {
  return detail::transmission(shape_of(kinematic_point(E, system), system));
}

Complex reflection(double E, const BarrierSystem& system) {
  return detail::reflection(shape_of(kinematic_point(E, system), system));
}

double transmission_phase(double E, const BarrierSystem& system,
                          PhaseContinuation* branch_state) {
  const double principal = detail::phase(shape_of(kinematic_point(E, system), system));
  return branch_state ? (*branch_state)(principal) : principal;
}

ScatteringSolution scatter(double E, const BarrierSystem& system) {
  const detail::Shape shape = shape_of(kinematic_point(E, system), system);
  ScatteringSolution s;
  s.T = detail::transmission(shape);
  s.R = detail::reflection(shape);
  s.phi_t = detail::phase(shape);
  s.magT2 = std::norm(s.T);
  s.magR2 = std::norm(s.R);
  return s;
}

RegionCoefficients region_coefficients(double E, const BarrierSystem& system) {
  const KinematicPoint p = kinematic_point(E, system);
  const detail::Shape shape = shape_of(p, system);
  const detail::ScaledHyperbolics h(p.q * system.a);
  const double a = system.a;
  const double l = system.l;
  const double k = p.k;
  const double beta = (1.0 - p.alpha * p.alpha) / (2.0 * p.alpha);
  const double gamma = (1.0 + p.alpha * p.alpha) / (2.0 * p.alpha);

  RegionCoefficients rc;
  rc.R = detail::reflection(shape);
  const Complex scaled_T = detail::scaled_transmission(shape, h);  // e^{2qa} T
  rc.T = scaled_T * h.eps;

  // cosh(qa) T = c e^{qa} T = c e^{-qa} (e^{2qa} T); same for sinh.
  const double decay = std::exp(-h.x);
  rc.C = Complex(h.c, beta * h.s) * decay * std::polar(1.0, k * a) * scaled_T;
  rc.D = Complex(0.0, -gamma * h.s) * decay * std::polar(1.0, k * (3.0 * a + 2.0 * l)) * scaled_T;

  // Remaining coefficients from continuity, each taken at the interface
  // where its basis function is O(1).
  const double m = system.mass;
  const double w = k / (E + m);                            // u(k) lower component
  const Complex sigma(0.0, p.q / (E - system.V0 + m));     // u(iq) lower component
  const Complex ratio = w / sigma;

  // z = 0: 1 + R = A + B e^{-qa};  w (1 - R) = sigma (A - B e^{-qa}).
  rc.A = 0.5 * ((1.0 + rc.R) + ratio * (1.0 - rc.R));

  // z = a: A e^{-qa} + B = C e^{ika} + D e^{-ika}.
  const Complex right_a = rc.C * std::polar(1.0, k * a);
  const Complex left_a = rc.D * std::polar(1.0, -k * a);
  rc.B = 0.5 * ((right_a + left_a) - ratio * (right_a - left_a));

  // z = a + l: F + G e^{-qa} = C e^{ik(a+l)} + D e^{-ik(a+l)}.
  const Complex right_al = rc.C * std::polar(1.0, k * (a + l));
  const Complex left_al = rc.D * std::polar(1.0, -k * (a + l));
  rc.F = 0.5 * ((right_al + left_al) + ratio * (right_al - left_al));

  // z = L: F e^{-qa} + G = T e^{ikL};  sigma (F e^{-qa} - G) = w T e^{ikL}.
  const Complex out = rc.T * std::polar(1.0, k * system.length());
  rc.G = 0.5 * out * (1.0 - ratio);
  return rc;
}

Spinor spinor_at(const RegionCoefficients& rc, const KinematicPoint& p,
                 const BarrierSystem& system, double z) {
  const double m = system.mass;
  const double w = p.k / (p.E + m);
  const Complex sigma(0.0, p.q / (p.E - system.V0 + m));
  const double a = system.a;
  const double L = system.length();

  const auto plane = [&](Complex forward, Complex backward) {
    const Complex f = forward * std::polar(1.0, p.k * z);
    const Complex b = backward * std::polar(1.0, -p.k * z);
    return Spinor{f + b, w * (f - b)};
  };
  const auto evanescent = [&](Complex decaying, double z_decay, Complex growing, double z_grow) {
    const Complex d = decaying * std::exp(-p.q * (z - z_decay));
    const Complex g = growing * std::exp(p.q * (z - z_grow));
    return Spinor{d + g, sigma * (d - g)};
  };

  if (z <= 0.0) return plane(1.0, rc.R);
  if (z <= a) return evanescent(rc.A, 0.0, rc.B, a);
  if (z <= a + system.l) return plane(rc.C, rc.D);
  if (z <= L) return evanescent(rc.F, a + system.l, rc.G, L);
  return plane(rc.T, 0.0);
}

}  // namespace dtunnel
