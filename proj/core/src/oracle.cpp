#include "dtunnel/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dtunnel/errors.hpp"

namespace dtunnel::oracle {

namespace {

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

LayeredSolution::LayerModes make_modes(double E, double mass, double potential,
                                       double z_start, double z_end) {
  LayeredSolution::LayerModes modes;
  modes.potential = potential;
  modes.z_start = z_start;
  modes.z_end = z_end;
  const double kinetic = E - potential;
  if (kinetic > mass) {
    modes.evanescent = false;
    modes.wavenumber = std::sqrt((kinetic - mass) * (kinetic + mass));
    modes.ratio = modes.wavenumber / (kinetic + mass);
  } else if (kinetic > -mass && kinetic < mass) {
    modes.evanescent = true;
    modes.wavenumber = std::sqrt((mass - kinetic) * (mass + kinetic));
    modes.ratio = Complex(0.0, modes.wavenumber / (kinetic + mass));
  } else {
    throw RegimeError(kinetic <= -mass ? Regime::Supercritical : Regime::BelowThreshold,
                      "layer at potential " + std::to_string(potential) +
                          " has no admissible modes at E=" + std::to_string(E));
  }
  return modes;
}

/// Upper components of the two layer modes at z. Lower components are
/// ratio * first and -ratio * second.
std::array<Complex, 2> mode_values(const LayeredSolution::LayerModes& m, double z) {
  if (m.evanescent) {
    return {Complex(std::exp(-m.wavenumber * (z - m.z_start)), 0.0),
            Complex(std::exp(m.wavenumber * (z - m.z_end)), 0.0)};
  }
  return {std::polar(1.0, m.wavenumber * (z - m.z_start)),
          std::polar(1.0, -m.wavenumber * (z - m.z_start))};
}

}  // namespace

LayeredSolution::LayeredSolution(double E, double mass, double k, Complex R, Complex T_local,
                                 std::vector<LayerModes> layers)
    : E_(E), mass_(mass), k_(k), R_(R), T_local_(T_local),
      length_(layers.empty() ? 0.0 : layers.back().z_end), layers_(std::move(layers)) {}

Complex LayeredSolution::transmission() const noexcept {
  return T_local_ * std::polar(1.0, -k_ * length_);
}

double LayeredSolution::incident_flux() const noexcept { return 2.0 * k_ / (E_ + mass_); }

Spinor LayeredSolution::spinor_at(double z) const {
  const double w = k_ / (E_ + mass_);
  if (z <= 0.0) {
    const Complex f = std::polar(1.0, k_ * z);
    const Complex b = R_ * std::polar(1.0, -k_ * z);
    return {f + b, w * (f - b)};
  }
  for (const LayerModes& m : layers_) {
    if (z <= m.z_end) {
      const auto v = mode_values(m, z);
      const Complex first = m.first * v[0];
      const Complex second = m.second * v[1];
      return {first + second, m.ratio * (first - second)};
    }
  }
  const Complex t = T_local_ * std::polar(1.0, k_ * (z - length_));
  return {t, w * t};
}

LayeredSolution solve_layers(double E, double mass, std::span<const Layer> layers) {
  if (!(E > mass)) {
    throw RegimeError(Regime::BelowThreshold, "BelowThreshold regime: E ≤ m");
  }
  const double k = std::sqrt((E - mass) * (E + mass));
  const double w = k / (E + mass);

  std::vector<LayeredSolution::LayerModes> modes;
  modes.reserve(layers.size());
  double z = 0.0;
  for (const Layer& layer : layers) {
    if (!(layer.width >= 0.0)) throw InvalidParameterError("layer width must be >= 0");
    modes.push_back(make_modes(E, mass, layer.potential, z, z + layer.width));
    z += layer.width;
  }
  const double length = z;

  // Unknowns: [R, first_1, second_1, ..., first_N, second_N, T_local].
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(layers.size()) + 2;
  Matrix M = Matrix::Zero(n, n);
  Vector rhs = Vector::Zero(n);

  // Column block of region j (0 = incident side, N + 1 = transmitted side).
  const auto put_region = [&](Eigen::Index row, std::size_t region, double zi, double sign) {
    if (region == 0) {
      const Complex back = std::polar(1.0, -k * zi);
      M(row, 0) += sign * back;
      M(row + 1, 0) += sign * (-w) * back;
      return;
    }
    if (region == layers.size() + 1) {
      const Complex out = std::polar(1.0, k * (zi - length));
      M(row, n - 1) += sign * out;
      M(row + 1, n - 1) += sign * w * out;
      return;
    }
    const auto& m = modes[region - 1];
    const auto v = mode_values(m, zi);
    const Eigen::Index col = 1 + 2 * static_cast<Eigen::Index>(region - 1);
    M(row, col) += sign * v[0];
    M(row, col + 1) += sign * v[1];
    M(row + 1, col) += sign * m.ratio * v[0];
    M(row + 1, col + 1) += sign * (-m.ratio) * v[1];
  };

  // Interface i sits between region i and region i + 1:
  // left spinor - right spinor = 0, with the known incident wave on the rhs.
  for (std::size_t i = 0; i <= layers.size(); ++i) {
    const double zi = (i == 0) ? 0.0 : modes[i - 1].z_end;
    const Eigen::Index row = 2 * static_cast<Eigen::Index>(i);
    put_region(row, i, zi, +1.0);
    put_region(row, i + 1, zi, -1.0);
    if (i == 0) {
      const Complex in = std::polar(1.0, k * zi);
      rhs(row) -= in;
      rhs(row + 1) -= w * in;
    }
  }

  Eigen::FullPivLU<Matrix> lu(M);
  if (!lu.isInvertible()) {
    throw SingularSystemError("continuity system is singular at E=" + std::to_string(E));
  }
  const Vector x = lu.solve(rhs);
  for (std::size_t j = 0; j < modes.size(); ++j) {
    modes[j].first = x(1 + 2 * static_cast<Eigen::Index>(j));
    modes[j].second = x(2 + 2 * static_cast<Eigen::Index>(j));
  }
  return LayeredSolution(E, mass, k, x(0), x(n - 1), std::move(modes));
}

LayeredSolution solve_double_barrier(double E, const BarrierSystem& system) {
  require_evanescent(E, system);
  const std::array<Layer, 3> stack{Layer{system.V0, system.a}, Layer{0.0, system.l},
                                   Layer{system.V0, system.a}};
  return solve_layers(E, system.mass, stack);
}

RegionCoefficients tm_solve(double E, const BarrierSystem& system) {
  const LayeredSolution s = solve_double_barrier(E, system);
  const auto& layers = s.layers();
  RegionCoefficients rc;
  rc.R = s.reflection();
  rc.T = s.transmission();
  rc.A = layers[0].first;
  rc.B = layers[0].second;
  // The gap modes are referenced to z = a; convert to plain e^{+-ikz}.
  const double k = s.k();
  rc.C = layers[1].first * std::polar(1.0, -k * system.a);
  rc.D = layers[1].second * std::polar(1.0, k * system.a);
  rc.F = layers[2].first;
  rc.G = layers[2].second;
  return rc;
}

Complex single_barrier_transmission(double E, double mass, double V0, double width) {
  const BarrierSystem probe{mass, V0, width, 0.0};
  require_evanescent(E, probe);
  const std::array<Layer, 1> stack{Layer{V0, width}};
  return solve_layers(E, mass, stack).transmission();
}

double oracle_phase(double E, const BarrierSystem& system) {
  const LayeredSolution s = solve_double_barrier(E, system);
  return std::arg(s.transmission()) + s.k() * system.length();
}

double numeric_phase_time(double E, const BarrierSystem& system) {
  require_evanescent(E, system);
  const double h = kDerivativeRelStep * E;
  if (classify_regime(E - h, system) != Regime::EvanescentParticle ||
      classify_regime(E + h, system) != Regime::EvanescentParticle) {
    throw DerivativeStepError("derivative stencil leaves the evanescent window");
  }
  const double centre = oracle_phase(E, system);
  const auto phase = [&](double e) { return continue_phase(oracle_phase(e, system), centre); };
  return richardson_derivative(phase, E);
}

DwellResult dwell_integral(double E, const BarrierSystem& system, double rel_tol) {
  const LayeredSolution s = solve_double_barrier(E, system);
  const auto density = [&s](double z) { return s.spinor_at(z).density(); };

  DwellResult result;
  double lo = 0.0;
  for (const auto& layer : s.layers()) {
    const double hi = layer.z_end;
    if (hi > lo) {
      // Stay strictly inside the layer so spinor_at never picks a neighbour.
      const auto inside = [&](double z) { return density(std::clamp(z, lo, hi)); };
      const QuadratureResult part = adaptive_simpson(inside, lo, hi, rel_tol);
      result.value += part.value;
      result.error_estimate += part.error_estimate;
    }
    lo = hi;
  }
  const double flux = s.incident_flux();
  result.value /= flux;
  result.error_estimate /= flux;
  return result;
}

std::vector<FieldSample> flux_profile(double E, const BarrierSystem& system,
                                      std::span<const double> z_samples) {
  const LayeredSolution s = solve_double_barrier(E, system);
  std::vector<FieldSample> samples;
  samples.reserve(z_samples.size());
  for (double z : z_samples) {
    const Spinor psi = s.spinor_at(z);
    samples.push_back({z, psi.density(), psi.flux()});
  }
  return samples;
}

std::vector<double> flux_sample_points(const BarrierSystem& system) {
  constexpr int kPerRegion = 20;
  constexpr double kOffset = 1e-6;
  const double L = system.length();
  const double outer = std::max(L, 1.0);
  const std::array<std::pair<double, double>, 5> regions{{
      {-outer, 0.0},
      {0.0, system.a},
      {system.a, system.a + system.l},
      {system.a + system.l, L},
      {L, L + outer},
  }};
  std::vector<double> z;
  z.reserve(5 * kPerRegion);
  for (const auto& [lo, hi] : regions) {
    const double inner_lo = lo + kOffset;
    const double inner_hi = hi - kOffset;
    for (int i = 0; i < kPerRegion; ++i) {
      // Empty regions (a = 0 or l = 0) collapse onto their interface.
      const double t = static_cast<double>(i) / (kPerRegion - 1);
      z.push_back(inner_hi > inner_lo ? inner_lo + t * (inner_hi - inner_lo) : lo);
    }
  }
  return z;
}

}  // namespace dtunnel::oracle
