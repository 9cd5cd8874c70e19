#include "dtunnel/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>

#include "dtunnel/amplitudes.hpp"
#include "dtunnel/cli/config.hpp"
#include "dtunnel/cli/csv.hpp"
#include "dtunnel/cli/plot_script.hpp"
#include "dtunnel/errors.hpp"
#include "dtunnel/oracle.hpp"
#include "dtunnel/times.hpp"

namespace dtunnel::cli {

namespace {

double rel_dev(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

double rel_dev(Complex x, Complex y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

void write_dataset(const SweepDataset& d, const RunConfig& cfg, std::ostream& out,
                   std::ostream& err) {
  if (cfg.out) {
    emit_csv(d, *cfg.out);
    err << "wrote " << d.rows.size() << " rows to " << cfg.out->string() << "\n";
  } else {
    emit_csv(d, out);
  }
}

int run_point(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const TimeReport t = time_report(cfg.energy, cfg.system);
  SweepDataset d;
  d.spec.swept = SweptParameter::Energy;
  d.spec.lo = d.spec.hi = cfg.energy;
  d.spec.points = 1;
  d.spec.fixed = cfg.system;
  d.spec.include_opaque_reference = false;
  SweepRow row;
  row.swept = cfg.energy;
  row.tau_p = t.tau_p;
  row.tau_d = t.tau_d;
  row.tau_i = t.tau_i;
  row.t_free = t.t_free;
  row.t_light = t.t_light;
  row.T2 = std::norm(transmission(cfg.energy, cfg.system));
  d.rows.push_back(row);
  write_dataset(d, cfg, out, err);
  return kOk;
}

int run_resonances(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto found =
      find_resonances(cfg.system, cfg.energy, cfg.l_min, cfg.l_max, cfg.scan_points);
  std::string text = "l,abs_R,tau_p,tau_d\n";
  for (const Resonance& r : found) {
    text += format_value(r.l) + ',' + format_value(r.abs_R) + ',' + format_value(r.tau_p) + ',' +
            format_value(r.tau_d) + '\n';
  }
  if (cfg.out) {
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!(file << text)) throw IoError("cannot write " + cfg.out->string());
    err << "wrote " << found.size() << " resonances to " << cfg.out->string() << "\n";
  } else {
    out << text;
  }
  return kOk;
}

struct Check {
  const char* name;
  double tolerance;
  double worst = 0.0;
  std::size_t samples = 0;

  void record(double dev) {
    worst = std::max(worst, dev);
    ++samples;
  }
  bool pass() const { return samples > 0 && worst <= tolerance; }
};

int run_verify(const RunConfig& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto open_unit = [&] {
    double u = 0.0;
    while (u == 0.0) u = uniform(rng);
    return u;
  };

  Check unitarity{"unitarity |1 - |T|^2 - |R|^2|", 1e-12};
  Check amplitudes{"T, R, C, D vs direct solve", 1e-10};
  Check phase_time{"phase time vs numeric derivative", 1e-6};
  Check delay_forms{"tau_i forms (difference / allowed)", 1.0};
  Check dwell{"dwell quadrature vs tau_p - tau_i", 1e-6};
  std::size_t skipped_derivatives = 0;

  for (std::size_t n = 0; n < cfg.verify_points; ++n) {
    const double E = 1.0 + 2.0 * open_unit();
    BarrierSystem s;
    s.V0 = E - 1.0 + 2.0 * open_unit();
    s.a = 30.0 * open_unit();
    s.l = 10.0 * open_unit();

    const ScatteringSolution sol = scatter(E, s);
    unitarity.record(std::abs(sol.magT2 + sol.magR2 - 1.0));

    const RegionCoefficients c = region_coefficients(E, s);
    const RegionCoefficients o = oracle::tm_solve(E, s);
    amplitudes.record(std::max(
        {rel_dev(c.T, o.T), rel_dev(c.R, o.R), rel_dev(c.C, o.C), rel_dev(c.D, o.D)}));

    const double tau_p = phase_time_closed(E, s);
    try {
      phase_time.record(rel_dev(tau_p, oracle::numeric_phase_time(E, s)));
    } catch (const DerivativeStepError&) {
      ++skipped_derivatives;  // E within a stencil width of threshold
    }

    const DelayForms f = self_interference_delay_forms(E, s);
    delay_forms.record(std::abs(f.from_reflection - f.from_terms) / f.tolerance);

    dwell.record(rel_dev(oracle::dwell_integral(E, s).value, tau_p - f.from_reflection));
  }

  char line[160];
  std::snprintf(line, sizeof line, "%-38s %14s %10s %8s\n", "check", "max deviation",
                "tolerance", "status");
  out << line;
  bool ok = true;
  for (const Check* c : {&unitarity, &amplitudes, &phase_time, &delay_forms, &dwell}) {
    std::snprintf(line, sizeof line, "%-38s %14.3e %10.0e %8s\n", c->name, c->worst,
                  c->tolerance, c->pass() ? "ok" : "FAILED");
    out << line;
    ok = ok && c->pass();
  }
  out << cfg.verify_points << " random points, seed " << cfg.seed;
  if (skipped_derivatives > 0) out << ", " << skipped_derivatives << " too close to threshold for the derivative";
  out << "\n";
  return ok ? kOk : kInternalFailure;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::Point:
      return run_point(cfg, out, err);
    case Command::Sweep:
      write_dataset(run_sweep(cfg.sweep), cfg, out, err);
      return kOk;
    case Command::Figure:
      if (cfg.format == Format::PlotScript) {
        const auto script = emit_plot_script(*cfg.out, *cfg.figure);
        err << "wrote " << script.string() << "\n";
      } else {
        write_dataset(figure_dataset(*cfg.figure), cfg, out, err);
      }
      return kOk;
    case Command::Resonances:
      return run_resonances(cfg, out, err);
    case Command::Verify:
      return run_verify(cfg, out);
  }
  return kInternalFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(parse_config(args), out, err);
  } catch (const HelpRequested& help) {
    out << help.text;
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for the list of keys.\n";
    return kInvalidParameters;
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameters;
  } catch (const InvalidParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameters;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const InternalConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kInternalFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kInternalFailure;
  }
}

}  // namespace dtunnel::cli
