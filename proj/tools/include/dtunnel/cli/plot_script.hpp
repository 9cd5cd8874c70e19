#pragma once

#include <filesystem>
#include <iosfwd>

#include "dtunnel/scenarios.hpp"

namespace dtunnel::cli {

/// Writes a gnuplot script for the CSV at csv_path. The saturated times are
/// read from the CSV and drawn as dashed horizontal lines. Throws IoError if
/// the CSV is missing or unreadable.
void emit_plot_script(const std::filesystem::path& csv_path, FigureId id, std::ostream& out);

/// Same, written next to the CSV as <stem>.gp. Returns the script path.
std::filesystem::path emit_plot_script(const std::filesystem::path& csv_path, FigureId id);

}  // namespace dtunnel::cli
