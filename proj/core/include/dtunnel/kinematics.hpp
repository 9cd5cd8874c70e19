#pragma once

// Units: hbar = c = 1. Energies are measured in the same unit as the rest
// energy `mass` (normally 1); lengths and times in 1/mass.

#include <string_view>

namespace dtunnel {

struct BarrierSystem {
  double mass = 1.0;
  double V0 = 0.0;  // barrier height
  double a = 0.0;   // width of each barrier
  double l = 0.0;   // separation between the barriers

  /// Extent of the potential region, 2a + l.
  double length() const noexcept { return 2.0 * a + l; }
};

enum class Regime {
  EvanescentParticle,  // E > m and E - m < V0 < E + m
  AboveBarrier,        // V0 <= E - m: oscillatory interior
  Supercritical,       // V0 >= E + m: Klein regime
  BelowThreshold,      // E <= m: no propagating free state
};

std::string_view to_string(Regime regime) noexcept;

struct KinematicPoint {
  double E = 0.0;
  double k = 0.0;      // free wavenumber
  double q = 0.0;      // decay constant inside a barrier
  double alpha = 0.0;  // (k/q)(E - V0 + m)/(E + m)
};

/// Throws InvalidParameterError unless mass > 0, V0 > 0, a >= 0, l >= 0
/// and all are finite.
void validate(const BarrierSystem& system);

Regime classify_regime(double E, const BarrierSystem& system) noexcept;

/// Throws RegimeError with the standard message unless the point is
/// EvanescentParticle.
void require_evanescent(double E, const BarrierSystem& system);

double wavenumber_k(double E, const BarrierSystem& system);
double decay_q(double E, const BarrierSystem& system);
double alpha(double E, const BarrierSystem& system);

KinematicPoint kinematic_point(double E, const BarrierSystem& system);

}  // namespace dtunnel
