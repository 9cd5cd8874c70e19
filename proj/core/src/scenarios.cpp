#include "dtunnel/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <cmath>
#include <sstream>
#include <thread>

#include "dtunnel/amplitudes.hpp"
#include "dtunnel/errors.hpp"
#include "dtunnel/numerics.hpp"
#include "dtunnel/times.hpp"

namespace dtunnel {

std::string_view to_string(SweptParameter swept) noexcept {
  switch (swept) {
    case SweptParameter::Width:
      return "a";
    case SweptParameter::Separation:
      return "l";
    case SweptParameter::Energy:
      return "E";
  }
  return "?";
}

std::optional<SweptParameter> parse_swept(std::string_view name) noexcept {
  if (name == "a" || name == "width_a" || name == "width") return SweptParameter::Width;
  if (name == "l" || name == "separation_l" || name == "separation") {
    return SweptParameter::Separation;
  }
  if (name == "E" || name == "energy_E" || name == "energy") return SweptParameter::Energy;
  return std::nullopt;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> grid(spec.points);
  const double span = spec.hi - spec.lo;
  const double last = static_cast<double>(spec.points - 1);
  for (std::size_t i = 0; i < spec.points; ++i) {
    grid[i] = spec.lo + span * (static_cast<double>(i) / last);
  }
  if (!grid.empty()) grid.back() = spec.hi;
  return grid;
}

BarrierSystem system_at(const SweepSpec& spec, double value) {
  BarrierSystem s = spec.fixed;
  if (spec.swept == SweptParameter::Width) s.a = value;
  if (spec.swept == SweptParameter::Separation) s.l = value;
  return s;
}

double energy_at(const SweepSpec& spec, double value) {
  return spec.swept == SweptParameter::Energy ? value : spec.energy;
}

namespace {

std::string describe_point(const SweepSpec& spec, std::size_t index, double value) {
  std::ostringstream os;
  os.precision(12);
  os << "grid point " << index << " (" << to_string(spec.swept) << "=" << value << ")";
  return os.str();
}

}  // namespace

void validate(const SweepSpec& spec) {
  if (!(spec.lo < spec.hi)) throw InvalidParameterError("sweep range needs lo < hi");
  if (spec.points < 2) throw InvalidParameterError("sweep needs at least 2 points");
  const std::vector<double> grid = sweep_grid(spec);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const BarrierSystem s = system_at(spec, grid[i]);
    const double E = energy_at(spec, grid[i]);
    try {
      validate(s);
      require_evanescent(E, s);
    } catch (const RegimeError& e) {
      throw RegimeError(e.regime(), std::string(e.what()) + " at " +
                                        describe_point(spec, i, grid[i]));
    } catch (const InvalidParameterError& e) {
      throw InvalidParameterError(std::string(e.what()) + " at " +
                                  describe_point(spec, i, grid[i]));
    }
    if (spec.include_nr) {
      const double kinetic = E - s.mass;
      if (!(kinetic < s.V0)) {
        throw RegimeError(Regime::AboveBarrier,
                          "nonrelativistic column needs E - m < V0 at " +
                              describe_point(spec, i, grid[i]));
      }
    }
  }
}

namespace {

SweepRow evaluate_row(const SweepSpec& spec, double value) {
  const BarrierSystem s = system_at(spec, value);
  const double E = energy_at(spec, value);
  const TimeReport times = time_report(E, s);
  const ScatteringSolution sol = scatter(E, s);

  SweepRow row;
  row.swept = value;
  row.tau_p = times.tau_p;
  row.tau_i = times.tau_i;
  row.tau_d = times.tau_d;
  row.t_free = times.t_free;
  row.t_light = times.t_light;
  row.T2 = sol.magT2;
  row.phi_t = sol.phi_t;
  if (spec.include_nr) row.tau_p_nr = nonrelativistic_times(E - s.mass, s).tau_p;
  if (spec.include_opaque_reference) {
    const TimeReport opaque = opaque_limit_times(E, s);
    row.tau_p_opaque = opaque.tau_p;
    row.tau_d_opaque = opaque.tau_d;
  }
  return row;
}

}  // namespace

SweepDataset run_sweep(const SweepSpec& spec) {
  validate(spec);
  const std::vector<double> grid = sweep_grid(spec);

  SweepDataset data;
  data.spec = spec;
  data.rows.resize(grid.size());

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, grid.size());
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < grid.size(); i += workers) {
            data.rows[i] = evaluate_row(spec, grid[i]);
          }
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  PhaseContinuation branch;
  for (SweepRow& row : data.rows) row.phi_t = branch(row.phi_t);
  return data;
}

std::vector<Resonance> find_resonances(const BarrierSystem& system, double E, double l_lo,
                                       double l_hi, std::size_t scan_points) {
  if (!(l_lo < l_hi) || l_lo < 0.0) {
    throw InvalidParameterError("resonance search needs 0 <= l_lo < l_hi");
  }
  if (scan_points < 3) throw InvalidParameterError("resonance scan needs >= 3 points");
  BarrierSystem probe = system;
  probe.l = l_lo;
  require_evanescent(E, probe);
  if (system.a == 0.0) return {};

  const auto reflectance = [&](double l) {
    BarrierSystem s = system;
    s.l = l;
    return std::norm(reflection(E, s));
  };

  SweepSpec scan;
  scan.lo = l_lo;
  scan.hi = l_hi;
  scan.points = scan_points;
  const std::vector<double> grid = sweep_grid(scan);
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), reflectance);

  std::vector<Resonance> found;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (!(values[i] < values[i - 1] && values[i] <= values[i + 1])) continue;
    const MinimizeResult best =
        golden_section_minimize(reflectance, grid[i - 1], grid[i + 1], 1e-10);
    BarrierSystem s = system;
    s.l = best.x;
    const TimeReport t = time_report(E, s);
    found.push_back({best.x, std::sqrt(best.fx), t.tau_p, t.tau_d});
  }
  return found;
}

std::string_view to_string(FigureId id) noexcept {
  switch (id) {
    case FigureId::Fig2A:
      return "2A";
    case FigureId::Fig2B:
      return "2B";
    case FigureId::Fig2C:
      return "2C";
    case FigureId::Fig3A:
      return "3A";
    case FigureId::Fig3B:
      return "3B";
  }
  return "?";
}

std::optional<FigureId> parse_figure(std::string_view name) noexcept {
  for (FigureId id : {FigureId::Fig2A, FigureId::Fig2B, FigureId::Fig2C, FigureId::Fig3A,
                      FigureId::Fig3B}) {
    const std::string_view canonical = to_string(id);
    if (name.size() == canonical.size() && name[0] == canonical[0] &&
        std::toupper(static_cast<unsigned char>(name[1])) == canonical[1]) {
      return id;
    }
  }
  return std::nullopt;
}

SweepSpec figure_spec(FigureId id) {
  constexpr std::size_t kPoints = 600;
  SweepSpec spec;
  spec.points = kPoints;
  spec.include_opaque_reference = true;
  switch (id) {
    case FigureId::Fig2A:
    case FigureId::Fig2B:
    case FigureId::Fig2C: {
      spec.swept = SweptParameter::Width;
      spec.lo = 0.01;
      spec.hi = 6.0;
      spec.include_nr = true;
      spec.fixed.l = 0.7;
      if (id == FigureId::Fig2A) {
        spec.energy = 1.8;
        spec.fixed.V0 = 1.5;
      } else if (id == FigureId::Fig2B) {
        spec.energy = 1.46;
        spec.fixed.V0 = 2.19;
      } else {
        spec.energy = 1.01;
        spec.fixed.V0 = 0.018;
      }
      spec.fixed.a = spec.lo;
      break;
    }
    case FigureId::Fig3A:
    case FigureId::Fig3B:
      spec.swept = SweptParameter::Separation;
      spec.lo = 0.01;
      spec.hi = 10.0;
      spec.include_nr = false;
      spec.energy = 1.8;
      spec.fixed.V0 = 1.5;
      spec.fixed.a = id == FigureId::Fig3A ? 0.7 : 3.0;
      spec.fixed.l = spec.lo;
      break;
  }
  return spec;
}

SweepDataset figure_dataset(FigureId id) { return run_sweep(figure_spec(id)); }

}  // namespace dtunnel
