#pragma once

// Independent numerical route to the scattering problem: a direct linear
// solve of the spinor continuity conditions for an arbitrary stack of
// constant-potential layers. Nothing here uses the closed forms.

#include <span>
#include <vector>

#include "dtunnel/amplitudes.hpp"
#include "dtunnel/kinematics.hpp"
#include "dtunnel/numerics.hpp"
#include "dtunnel/spinor.hpp"

namespace dtunnel::oracle {

struct Layer {
  double potential = 0.0;
  double width = 0.0;
};

/// Mode coefficients of a solved layer stack. Each layer's modes are
/// referenced to the layer's own edges (e^{-q(z - z_start)}, e^{q(z - z_end)}
/// for evanescent layers, e^{+-i kappa (z - z_start)} for propagating ones),
/// which keeps the linear system well conditioned for thick barriers.
class LayeredSolution {
 public:
  struct LayerModes {
    double potential = 0.0;
    double z_start = 0.0;
    double z_end = 0.0;
    bool evanescent = true;
    double wavenumber = 0.0;  // q or kappa
    Complex ratio;            // lower/upper component ratio of the first mode
    Complex first;
    Complex second;
  };

  LayeredSolution(double E, double mass, double k, Complex R, Complex T_local,
                  std::vector<LayerModes> layers);

  Complex reflection() const noexcept { return R_; }
  /// Amplitude in the plain e^{ikz} convention.
  Complex transmission() const noexcept;
  double length() const noexcept { return length_; }
  double k() const noexcept { return k_; }
  const std::vector<LayerModes>& layers() const noexcept { return layers_; }

  /// 2k/(E + m): flux of the unit incident wave.
  double incident_flux() const noexcept;

  Spinor spinor_at(double z) const;

 private:
  double E_;
  double mass_;
  double k_;
  Complex R_;
  Complex T_local_;  // coefficient of e^{ik(z - L)}
  double length_;
  std::vector<LayerModes> layers_;
};

/// Solves the 2(N+1) continuity equations of an N-layer stack at energy E
/// (free regions on both sides at zero potential). Throws RegimeError when a
/// layer is supercritical or at a mode threshold and SingularSystemError if
/// the system cannot be inverted.
LayeredSolution solve_layers(double E, double mass, std::span<const Layer> layers);

LayeredSolution solve_double_barrier(double E, const BarrierSystem& system);

/// Region coefficients for the double barrier, in the RegionCoefficients
/// convention, from the direct solve.
RegionCoefficients tm_solve(double E, const BarrierSystem& system);

/// One barrier of the given width, solved as its own three-region problem.
Complex single_barrier_transmission(double E, double mass, double V0, double width);

/// Phase of the oracle transmission amplitude, arg(T) + k(2a + l), on the
/// principal branch.
double oracle_phase(double E, const BarrierSystem& system);

/// Richardson central difference of the oracle phase with relative step
/// 1e-6 in E. Throws DerivativeStepError if the stencil leaves the
/// evanescent window.
double numeric_phase_time(double E, const BarrierSystem& system);

struct DwellResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Integral of psi^dagger psi over 0 < z < 2a + l divided by the incident
/// flux, by adaptive Simpson split at the interfaces.
DwellResult dwell_integral(double E, const BarrierSystem& system, double rel_tol = 1e-9);

struct FieldSample {
  double z = 0.0;
  double psi_dag_psi = 0.0;
  double J = 0.0;
};

std::vector<FieldSample> flux_profile(double E, const BarrierSystem& system,
                                      std::span<const double> z_samples);

/// 20 positions in each of the five regions, kept 1e-6 away from the
/// interfaces. The outer regions extend max(2a + l, 1) beyond the potential.
std::vector<double> flux_sample_points(const BarrierSystem& system);

}  // namespace dtunnel::oracle
