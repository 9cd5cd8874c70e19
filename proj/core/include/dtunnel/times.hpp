#pragma once

#include "dtunnel/kinematics.hpp"

namespace dtunnel {

/// All times in units of 1/mass (hbar = c = 1).
struct TimeReport {
  double tau_p = 0.0;    // phase time
  double tau_i = 0.0;    // self-interference delay
  double tau_d = 0.0;    // dwell time, tau_p - tau_i
  double t_free = 0.0;   // free-particle transit of 0 < z < 2a + l
  double t_light = 0.0;  // light transit of the same region
};

/// Intermediate quantities of the closed-form phase time and
/// self-interference delay. Gamma, Delta are stored multiplied by e^{-2qa};
/// h1, h2, h3 by e^{-4qa}. The ratios that enter the times are unchanged.
struct PhaseTimeTerms {
  double Gamma = 0.0;
  double Delta = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  // Sums of the magnitudes of the terms in h2 and h3. The expanded forms
  // cancel heavily when h2, h3 are small; these bound the rounding error.
  double h2_magnitude = 0.0;
  double h3_magnitude = 0.0;
};

PhaseTimeTerms phase_time_terms(double E, const BarrierSystem& system);

double phase_time_closed(double E, const BarrierSystem& system);

/// -(m/k^2) Im R.
double self_interference_delay_from_reflection(double E, const BarrierSystem& system);

/// (m/k^2) (1 + alpha^2)/(4 alpha^3) h2/h3.
double self_interference_delay_from_terms(double E, const BarrierSystem& system);

/// Both forms of the delay and the largest difference accepted between them:
/// 1e-8 relative, widened by the rounding-error bound of the terms form.
struct DelayForms {
  double from_reflection = 0.0;
  double from_terms = 0.0;
  double tolerance = 0.0;
};

DelayForms self_interference_delay_forms(double E, const BarrierSystem& system);

/// Returns the reflection form after checking it against the terms form.
/// Throws InternalConsistencyError when they differ by more than the tolerance.
double self_interference_delay(double E, const BarrierSystem& system);

double dwell_time(double E, const BarrierSystem& system);

/// Free transit uses the Dirac group velocity k/E.
double free_transit_time(double E, const BarrierSystem& system);
double light_transit_time(const BarrierSystem& system) noexcept;

TimeReport time_report(double E, const BarrierSystem& system);

/// Saturated times for qa -> infinity. Independent of a and l; t_free and
/// t_light still refer to the system's geometry.
TimeReport opaque_limit_times(double E, const BarrierSystem& system);

/// Schroedinger counterpart at kinetic energy E_kin (0 < E_kin < V0), using
/// k = sqrt(2 m E_kin), q = sqrt(2 m (V0 - E_kin)) and alpha = k/q in the same
/// phase structure. tau_p is the numerical energy derivative of the phase.
TimeReport nonrelativistic_times(double E_kin, const BarrierSystem& system);

/// Nonrelativistic transmission phase (principal branch).
double nonrelativistic_phase(double E_kin, const BarrierSystem& system);

}  // namespace dtunnel
