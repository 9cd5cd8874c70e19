#include "dtunnel/cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dtunnel/cli/config.hpp"

namespace dtunnel::cli {

namespace {

constexpr int kSignificantDigits = 12;

const std::vector<std::string> kBaseColumns{"swept",  "tau_p",   "tau_d", "tau_i",
                                            "t_free", "t_light", "T2"};

bool all_rows(const SweepDataset& d, std::optional<double> SweepRow::*member) {
  return !d.rows.empty() &&
         std::all_of(d.rows.begin(), d.rows.end(), [member](const SweepRow& r) {
           return (r.*member).has_value();
         });
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_field(const std::string& text, int line) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw IoError("CSV line " + std::to_string(line) + ": '" + text + "' is not a number");
  }
  return v;
}

}  // namespace

std::string format_value(double v) {
  char buf[32];
  const auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
  return std::string(buf, ec == std::errc{} ? end : buf);
}

void emit_csv(const SweepDataset& dataset, std::ostream& out) {
  const bool nr = all_rows(dataset, &SweepRow::tau_p_nr);
  const bool opaque = all_rows(dataset, &SweepRow::tau_p_opaque) &&
                      all_rows(dataset, &SweepRow::tau_d_opaque);
  std::string text;
  for (const auto& c : kBaseColumns) text += (c == "swept" ? "" : ",") + c;
  if (nr) text += ",tau_p_nr";
  if (opaque) text += ",tau_p_opaque,tau_d_opaque";
  text += '\n';
  for (const SweepRow& r : dataset.rows) {
    for (double v : {r.swept, r.tau_p, r.tau_d, r.tau_i, r.t_free, r.t_light}) {
      text += format_value(v);
      text += ',';
    }
    text += format_value(r.T2);
    if (nr) text += ',' + format_value(*r.tau_p_nr);
    if (opaque) text += ',' + format_value(*r.tau_p_opaque) + ',' + format_value(*r.tau_d_opaque);
    text += '\n';
  }
  out << text;
  if (!out) throw IoError("failed writing CSV");
}

void emit_csv(const SweepDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  emit_csv(dataset, out);
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

bool CsvTable::has(const std::string& column) const {
  return std::find(columns.begin(), columns.end(), column) != columns.end();
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError("CSV is empty");
  table.columns = split(line);
  if (!std::equal(kBaseColumns.begin(), kBaseColumns.end(), table.columns.begin(),
                  table.columns.begin() + std::min(table.columns.size(), kBaseColumns.size())) ||
      table.columns.size() < kBaseColumns.size()) {
    throw IoError("CSV header does not start with " + std::string("swept,tau_p,...,T2"));
  }
  for (int n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != table.columns.size()) {
      throw IoError("CSV line " + std::to_string(n) + " has " + std::to_string(fields.size()) +
                    " fields, header has " + std::to_string(table.columns.size()));
    }
    SweepRow r;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const double v = parse_field(fields[i], n);
      const std::string& c = table.columns[i];
      if (c == "swept") r.swept = v;
      else if (c == "tau_p") r.tau_p = v;
      else if (c == "tau_d") r.tau_d = v;
      else if (c == "tau_i") r.tau_i = v;
      else if (c == "t_free") r.t_free = v;
      else if (c == "t_light") r.t_light = v;
      else if (c == "T2") r.T2 = v;
      else if (c == "tau_p_nr") r.tau_p_nr = v;
      else if (c == "tau_p_opaque") r.tau_p_opaque = v;
      else if (c == "tau_d_opaque") r.tau_d_opaque = v;
      else throw IoError("CSV column '" + c + "' is not recognised");
    }
    table.rows.push_back(r);
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read CSV " + path.string());
  return read_csv(in);
}

}  // namespace dtunnel::cli
