#include "dtunnel/kinematics.hpp"

#include <cmath>
#include <string>

#include "dtunnel/errors.hpp"

namespace dtunnel {

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::EvanescentParticle:
      return "EvanescentParticle";
    case Regime::AboveBarrier:
      return "AboveBarrier";
    case Regime::Supercritical:
      return "Supercritical";
    case Regime::BelowThreshold:
      return "BelowThreshold";
  }
  return "unknown";
}

void validate(const BarrierSystem& system) {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(system.mass) || !finite(system.V0) || !finite(system.a) || !finite(system.l)) {
    throw InvalidParameterError("barrier parameters must be finite");
  }
  if (system.mass <= 0.0) throw InvalidParameterError("mass must be positive");
  if (system.V0 <= 0.0) throw InvalidParameterError("V0 must be positive");
  if (system.a < 0.0) throw InvalidParameterError("barrier width a must be >= 0");
  if (system.l < 0.0) throw InvalidParameterError("separation l must be >= 0");
}

Regime classify_regime(double E, const BarrierSystem& system) noexcept {
  const double m = system.mass;
  if (!(E > m)) return Regime::BelowThreshold;
  // Compared through E - V0, the same difference that builds q, so q^2 > 0
  // whenever this reports the evanescent regime.
  const double kinetic = E - system.V0;
  if (kinetic <= -m) return Regime::Supercritical;
  if (kinetic >= m) return Regime::AboveBarrier;
  return Regime::EvanescentParticle;
}

namespace {

[[noreturn]] void throw_regime(Regime regime) {
  switch (regime) {
    case Regime::Supercritical:
      throw RegimeError(regime, "Supercritical regime: V0 ≥ E + m");
    case Regime::AboveBarrier:
      throw RegimeError(regime, "AboveBarrier regime: V0 ≤ E - m");
    case Regime::BelowThreshold:
      throw RegimeError(regime, "BelowThreshold regime: E ≤ m");
    case Regime::EvanescentParticle:
      break;
  }
  throw RegimeError(regime, "unexpected regime");
}

}  // namespace

void require_evanescent(double E, const BarrierSystem& system) {
  validate(system);
  if (!std::isfinite(E)) throw InvalidParameterError("energy must be finite");
  const Regime regime = classify_regime(E, system);
  if (regime != Regime::EvanescentParticle) throw_regime(regime);
}

double wavenumber_k(double E, const BarrierSystem& system) {
  const double m = system.mass;
  if (!(E > m)) throw_regime(Regime::BelowThreshold);
  return std::sqrt((E - m) * (E + m));
}

double decay_q(double E, const BarrierSystem& system) {
  const double m = system.mass;
  const double kinetic = E - system.V0;
  if (kinetic <= -m) throw_regime(Regime::Supercritical);
  if (kinetic >= m) throw_regime(Regime::AboveBarrier);
  const double q2 = (m - kinetic) * (m + kinetic);
  return std::sqrt(q2);
}

double alpha(double E, const BarrierSystem& system) {
  require_evanescent(E, system);
  const double m = system.mass;
  return wavenumber_k(E, system) / decay_q(E, system) * (E - system.V0 + m) / (E + m);
}

KinematicPoint kinematic_point(double E, const BarrierSystem& system) {
  require_evanescent(E, system);
  const double m = system.mass;
  KinematicPoint p;
  p.E = E;
  p.k = wavenumber_k(E, system);
  p.q = decay_q(E, system);
  p.alpha = p.k / p.q * (E - system.V0 + m) / (E + m);
  return p;
}

}  // namespace dtunnel
