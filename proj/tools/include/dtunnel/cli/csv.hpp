#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dtunnel/scenarios.hpp"

namespace dtunnel::cli {

/// Shortest form with 12 significant digits ("1.47103323963", "2.5e-05").
std::string format_value(double v);

/// swept,tau_p,tau_d,tau_i,t_free,t_light,T2[,tau_p_nr][,tau_p_opaque,tau_d_opaque]
/// Optional columns appear when every row carries them. LF line endings.
void emit_csv(const SweepDataset& dataset, std::ostream& out);
void emit_csv(const SweepDataset& dataset, const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;  // phi_t is not stored and reads back as 0

  bool has(const std::string& column) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace dtunnel::cli
