#pragma once

// Closed-form double-barrier scattering amplitudes. Everything here is
// evaluated with the growing factor e^{2qa} divided out analytically, so the
// results stay finite for any barrier opacity qa.

#include "dtunnel/kinematics.hpp"
#include "dtunnel/numerics.hpp"
#include "dtunnel/spinor.hpp"

namespace dtunnel {

struct ScatteringSolution {
  Complex T;
  Complex R;
  double phi_t = 0.0;  // T = |T| exp(i[phi_t - k(2a + l)])
  double magT2 = 0.0;
  double magR2 = 0.0;
};

/// Coefficients of the five region solutions.
///
///   I   (z < 0)         e^{ikz} u(k) + R e^{-ikz} u(-k)
///   II  (0 < z < a)     A e^{-qz} u(iq) + B e^{q(z-a)} u(-iq)
///   III (a < z < a+l)   C e^{ikz} u(k) + D e^{-ikz} u(-k)
///   IV  (a+l < z < L)   F e^{-q(z-a-l)} u(iq) + G e^{q(z-L)} u(-iq)
///   V   (z > L)         T e^{ikz} u(k)
///
/// with L = 2a + l. B, F and G are anchored at the interface where their
/// exponential is largest, so every coefficient is bounded; relative to the
/// unanchored basis, B_plain = B e^{-qa}, F_plain = F e^{q(a+l)},
/// G_plain = G e^{-qL}. A, C, D, R, T need no conversion.
struct RegionCoefficients {
  Complex R, A, B, C, D, F, G, T;
};

Complex transmission(double E, const BarrierSystem& system);
Complex reflection(double E, const BarrierSystem& system);

/// phi_t from the explicit numerator/denominator pair via atan2. Without a
/// continuation the principal branch is returned; with one, the value is
/// continued from the previous call on the same object.
double transmission_phase(double E, const BarrierSystem& system,
                          PhaseContinuation* branch_state = nullptr);

ScatteringSolution scatter(double E, const BarrierSystem& system);

RegionCoefficients region_coefficients(double E, const BarrierSystem& system);

/// Evaluates the region solution at z for the given coefficients. At an
/// interface the left region is used.
Spinor spinor_at(const RegionCoefficients& coefficients, const KinematicPoint& point,
                 const BarrierSystem& system, double z);

}  // namespace dtunnel
