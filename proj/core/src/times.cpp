#include "dtunnel/times.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "detail/double_barrier_forms.hpp"
#include "dtunnel/errors.hpp"
#include "dtunnel/numerics.hpp"

namespace dtunnel {

namespace {

constexpr double kDualFormTolerance = 1e-8;

}  // namespace

PhaseTimeTerms phase_time_terms(double E, const BarrierSystem& system) {
  const KinematicPoint p = kinematic_point(E, system);
  const double m = system.mass;
  const double k = p.k;
  const double q = p.q;
  const double al = p.alpha;
  const double a2 = al * al;
  const double A = 1.0 + a2;
  const double K = k * k + q * q;
  const double EV = E - system.V0;
  const double kl = k * system.l;
  const double two_kl = 2.0 * kl;
  const double two_x = 2.0 * q * system.a;

  const detail::ScaledHyperbolics h(q * system.a);
  const double sh_sq = h.s * h.s;  // sinh^2(x) e^{-2x}
  const double sh2 = h.sinh2x();
  const double ch2 = h.cosh2x();
  const double sin2 = std::sin(two_kl);
  const double cos2 = std::cos(two_kl);
  const double sin1 = std::sin(kl);
  const double cos1 = std::cos(kl);

  PhaseTimeTerms t;
  t.Gamma = 8.0 * a2 * ch2 - 4.0 * A * A * sin1 * sin1 * sh_sq;
  t.Delta = 4.0 * al * (1.0 - a2) * sh2 + 2.0 * A * A * sin2 * sh_sq;

  // Each brace scales like e^{2x}; the lone (1 + alpha^2) term picks up eps.
  const double delta_brace =
      2.0 * A * (A * E * q * q * two_kl * sin2 - 4.0 * a2 * m * K * cos2) * sh_sq -
      4.0 * a2 * m * K * (A * h.eps + (3.0 - a2) * ch2) +
      k * k * two_x * EV * (A * A * cos2 - (1.0 - 6.0 * a2 + a2 * a2)) * sh2;
  const double gamma_brace =
      -4.0 * al * (1.0 - a2) * k * k * two_x * EV * ch2 +
      2.0 * A * (A * E * q * q * two_kl * cos2 + 4.0 * a2 * m * K * sin2) * sh_sq +
      (4.0 * al * (1.0 - 3.0 * a2) * m * K - A * A * k * k * two_x * EV * sin2) * sh2;
  t.h1 = t.Delta * delta_brace + t.Gamma * gamma_brace;

  const double h2_terms[] = {0.5 * al * (1.0 - a2) * sin2 * sh2 * sh2,
                             a2 * cos1 * cos1 * h.sinh4x(),
                             al * (1.0 - a2) * sin2 * sh_sq * ch2,
                             (1.0 - a2) * (1.0 - a2) * sin1 * sin1 * sh_sq * sh2};

  const double c2 = h.c * h.c;
  const double a4 = a2 * a2;
  const double h3_terms[] = {
      8.0 * a4 * c2 * c2,
      (1.0 + 6.0 * a4 + a4 * a4) * sh_sq * sh_sq,
      -(1.0 - a4) * (1.0 - a4) * cos2 * sh_sq * sh_sq,
      a2 * (1.0 - a2) * (1.0 - a2) * sh2 * sh2,
      a2 * A * A * cos2 * sh2 * sh2,
      2.0 * al * (1.0 - a2) * A * A * sin2 * sh_sq * sh2};

  for (double v : h2_terms) {
    t.h2 += v;
    t.h2_magnitude += std::abs(v);
  }
  for (double v : h3_terms) {
    t.h3 += v;
    t.h3_magnitude += std::abs(v);
  }
  t.h3 /= 8.0 * a4;
  t.h3_magnitude /= 8.0 * a4;
  return t;
}

double phase_time_closed(double E, const BarrierSystem& system) {
  const KinematicPoint p = kinematic_point(E, system);
  const PhaseTimeTerms t = phase_time_terms(E, system);
  const double k2 = p.k * p.k;
  const double q2 = p.q * p.q;
  return p.k * system.l * E / k2 -
         t.h1 / (k2 * q2 * (t.Gamma * t.Gamma + t.Delta * t.Delta));
}

double self_interference_delay_from_reflection(double E, const BarrierSystem& system) {
  const KinematicPoint p = kinematic_point(E, system);
  const detail::Shape shape{p.k, p.q, p.alpha, system.a, system.l};
  return -system.mass / (p.k * p.k) * detail::reflection(shape).imag();
}

namespace {

double delay_from_terms(const KinematicPoint& p, const PhaseTimeTerms& t, double mass) {
  const double al = p.alpha;
  return mass / (p.k * p.k) * (1.0 + al * al) / (4.0 * al * al * al) * t.h2 / t.h3;
}

}  // namespace

double self_interference_delay_from_terms(double E, const BarrierSystem& system) {
  return delay_from_terms(kinematic_point(E, system), phase_time_terms(E, system), system.mass);
}

DelayForms self_interference_delay_forms(double E, const BarrierSystem& system) {
  const KinematicPoint p = kinematic_point(E, system);
  const PhaseTimeTerms t = phase_time_terms(E, system);
  DelayForms f;
  f.from_reflection = self_interference_delay_from_reflection(E, system);
  f.from_terms = delay_from_terms(p, t, system.mass);
  // Both vanish together (a = 0, resonance); measure against m/k^2 there.
  const double floor = 1e-12 * system.mass / (p.k * p.k);
  const double scale = std::max(std::abs(f.from_reflection), std::abs(f.from_terms));
  // Relative rounding error of h2/h3 is at most ~eps times the summed condition numbers.
  const double condition = (t.h2 != 0.0 ? t.h2_magnitude / std::abs(t.h2) : 0.0) +
                           (t.h3 != 0.0 ? t.h3_magnitude / std::abs(t.h3) : 0.0);
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * condition *
                          std::abs(f.from_terms);
  f.tolerance = kDualFormTolerance * scale + rounding + floor;
  return f;
}

double self_interference_delay(double E, const BarrierSystem& system) {
  const DelayForms f = self_interference_delay_forms(E, system);
  if (!(std::abs(f.from_reflection - f.from_terms) <= f.tolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "self-interference delay forms disagree at E=" << E << ": " << f.from_reflection
        << " vs " << f.from_terms;
    throw InternalConsistencyError(msg.str());
  }
  return f.from_reflection;
}

double dwell_time(double E, const BarrierSystem& system) {
  return phase_time_closed(E, system) - self_interference_delay(E, system);
}

double free_transit_time(double E, const BarrierSystem& system) {
  return system.length() * E / wavenumber_k(E, system);
}

double light_transit_time(const BarrierSystem& system) noexcept { return system.length(); }

TimeReport time_report(double E, const BarrierSystem& system) {
  TimeReport r;
  r.tau_p = phase_time_closed(E, system);
  r.tau_i = self_interference_delay(E, system);
  r.tau_d = r.tau_p - r.tau_i;
  r.t_free = free_transit_time(E, system);
  r.t_light = light_transit_time(system);
  return r;
}

TimeReport opaque_limit_times(double E, const BarrierSystem& system) {
  const KinematicPoint p = kinematic_point(E, system);
  const double m = system.mass;
  const double weight = 2.0 * p.alpha / (1.0 + p.alpha * p.alpha);
  TimeReport r;
  r.tau_d = weight * m / (p.q * p.q);
  r.tau_i = weight * m / (p.k * p.k);
  r.tau_p = weight * (p.k * p.k + p.q * p.q) / (p.k * p.k) * m / (p.q * p.q);
  r.t_free = free_transit_time(E, system);
  r.t_light = light_transit_time(system);
  return r;
}

namespace {

detail::Shape nonrelativistic_shape(double E_kin, const BarrierSystem& system) {
  validate(system);
  if (!(E_kin > 0.0) || !(E_kin < system.V0)) {
    throw RegimeError(E_kin <= 0.0 ? Regime::BelowThreshold : Regime::AboveBarrier,
                      "nonrelativistic window requires 0 < E_kin < V0");
  }
  const double m = system.mass;
  const double k = std::sqrt(2.0 * m * E_kin);
  const double q = std::sqrt(2.0 * m * (system.V0 - E_kin));
  return {k, q, k / q, system.a, system.l};
}

}  // namespace

double nonrelativistic_phase(double E_kin, const BarrierSystem& system) {
  return detail::phase(nonrelativistic_shape(E_kin, system));
}

TimeReport nonrelativistic_times(double E_kin, const BarrierSystem& system) {
  const detail::Shape centre = nonrelativistic_shape(E_kin, system);
  const double phi0 = detail::phase(centre);
  const auto continued_phase = [&](double e) {
    return continue_phase(nonrelativistic_phase(e, system), phi0);
  };
  TimeReport r;
  r.tau_p = richardson_derivative(continued_phase, E_kin);
  r.tau_i = -system.mass / (centre.k * centre.k) * detail::reflection(centre).imag();
  r.tau_d = r.tau_p - r.tau_i;
  r.t_free = system.length() * system.mass / centre.k;
  r.t_light = light_transit_time(system);
  return r;
}

}  // namespace dtunnel
