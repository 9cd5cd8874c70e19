#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "dtunnel/kinematics.hpp"

namespace dtunnel {

enum class SweptParameter { Width, Separation, Energy };

std::string_view to_string(SweptParameter swept) noexcept;
std::optional<SweptParameter> parse_swept(std::string_view name) noexcept;

struct SweepSpec {
  SweptParameter swept = SweptParameter::Width;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 2;
  BarrierSystem fixed;
  double energy = 0.0;
  bool include_nr = false;
  bool include_opaque_reference = true;
};

struct SweepRow {
  double swept = 0.0;
  double tau_p = 0.0;
  double tau_d = 0.0;
  double tau_i = 0.0;
  double t_free = 0.0;
  double t_light = 0.0;
  double T2 = 0.0;
  double phi_t = 0.0;  // continued along the grid
  std::optional<double> tau_p_nr;
  std::optional<double> tau_p_opaque;
  std::optional<double> tau_d_opaque;
};

struct SweepDataset {
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

/// Grid values lo + i (hi - lo)/(points - 1), endpoints exact.
std::vector<double> sweep_grid(const SweepSpec& spec);

/// System and energy at one swept value.
BarrierSystem system_at(const SweepSpec& spec, double value);
double energy_at(const SweepSpec& spec, double value);

/// Checks lo < hi, points >= 2, the fixed system, and that every grid point
/// is EvanescentParticle (and inside the Schroedinger window when the NR
/// column is requested). Errors name the offending grid value.
void validate(const SweepSpec& spec);

/// Evaluates every grid point (in parallel), then continues phi_t along the
/// grid in a sequential pass. Deterministic for a fixed spec.
SweepDataset run_sweep(const SweepSpec& spec);

struct Resonance {
  double l = 0.0;
  double abs_R = 0.0;
  double tau_p = 0.0;
  double tau_d = 0.0;
};

/// Local minima of |R|^2 in l, found on a scan grid and refined by
/// golden-section search to |dl| < 1e-10. The system's own l is ignored.
/// With a == 0 there is no reflection at all and the list is empty.
std::vector<Resonance> find_resonances(const BarrierSystem& system, double E, double l_lo,
                                       double l_hi, std::size_t scan_points = 2000);

enum class FigureId { Fig2A, Fig2B, Fig2C, Fig3A, Fig3B };

std::string_view to_string(FigureId id) noexcept;
std::optional<FigureId> parse_figure(std::string_view name) noexcept;

/// Canonical sweep per figure: 600 points, a in [0.01, 6] at l = 0.7 for the
/// width figures, l in [0.01, 10] for the separation figures.
SweepSpec figure_spec(FigureId id);
SweepDataset figure_dataset(FigureId id);

}  // namespace dtunnel
