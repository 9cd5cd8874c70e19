#include "dtunnel/cli/plot_script.hpp"

#include <fstream>
#include <ostream>

#include "dtunnel/cli/config.hpp"
#include "dtunnel/cli/csv.hpp"

namespace dtunnel::cli {

namespace {

bool separation_figure(FigureId id) { return id == FigureId::Fig3A || id == FigureId::Fig3B; }

// gnuplot single-quoted string: only the quote itself needs doubling.
std::string quoted(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("''") : std::string(1, c);
  return out + "'";
}

}  // namespace

void emit_plot_script(const std::filesystem::path& csv_path, FigureId id, std::ostream& out) {
  if (!std::filesystem::exists(csv_path)) throw IoError("CSV not found: " + csv_path.string());
  const CsvTable table = read_csv(csv_path);
  if (table.rows.empty()) throw IoError("CSV has no rows: " + csv_path.string());

  const SweepSpec spec = figure_spec(id);
  const std::string name(to_string(id));
  std::filesystem::path image = csv_path;
  image.replace_extension(".png");

  out << "# gnuplot script for figure " << name << ", generated by dtunnel\n"
      << "# E = " << format_value(spec.energy) << ", V0 = " << format_value(spec.fixed.V0);
  if (separation_figure(id)) {
    out << ", a = " << format_value(spec.fixed.a) << "\n";
  } else {
    out << ", l = " << format_value(spec.fixed.l) << "\n";
  }
  out << "data = " << quoted(csv_path.filename().string()) << "\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 900,600\n"
      << "set output " << quoted(image.filename().string()) << "\n"
      << "set title 'Figure " << name << "'\n"
      << "set xlabel '" << (separation_figure(id) ? "separation l" : "barrier width a") << "'\n"
      << "set ylabel 'time'\n"
      << "set key top left\n";

  if (table.has("tau_p_opaque") && table.has("tau_d_opaque")) {
    out << "tau_p_sat = " << format_value(*table.rows.front().tau_p_opaque) << "\n"
        << "tau_d_sat = " << format_value(*table.rows.front().tau_d_opaque) << "\n";
  }

  out << "plot data using 'swept':'tau_p' with lines lw 2 title 'phase time',\\\n"
      << "     data using 'swept':'tau_d' with lines lw 2 title 'dwell time',\\\n";
  if (table.has("tau_p_nr")) {
    out << "     data using 'swept':'tau_p_nr' with lines lw 1 title 'phase time (Schroedinger)',\\\n";
  }
  out << "     data using 'swept':'t_free' with lines lw 1 title 'free transit',\\\n"
      << "     data using 'swept':'t_light' with lines lw 1 title 'light transit'";
  if (table.has("tau_p_opaque") && table.has("tau_d_opaque")) {
    out << ",\\\n"
        << "     tau_p_sat with lines dashtype 2 lc rgb 'black' title 'saturated phase time',\\\n"
        << "     tau_d_sat with lines dashtype 2 lc rgb 'gray40' title 'saturated dwell time'";
  }
  out << "\n";
  if (!out) throw IoError("failed writing plot script");
}

std::filesystem::path emit_plot_script(const std::filesystem::path& csv_path, FigureId id) {
  std::filesystem::path script = csv_path;
  script.replace_extension(".gp");
  std::ofstream file;
  // Check the CSV before creating the script so a failure leaves nothing behind.
  if (!std::filesystem::exists(csv_path)) throw IoError("CSV not found: " + csv_path.string());
  file.open(script, std::ios::binary);
  if (!file) throw IoError("cannot open " + script.string() + " for writing");
  emit_plot_script(csv_path, id, file);
  file.close();
  if (!file) throw IoError("failed writing " + script.string());
  return script;
}

}  // namespace dtunnel::cli
