#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtunnel/kinematics.hpp"
#include "dtunnel/scenarios.hpp"

namespace dtunnel::cli {

/// Bad command line or config file. The message names the offending key.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cannot read or write a file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; text is the help to print. Not an error.
struct HelpRequested {
  std::string text;
};

enum class Command { Point, Sweep, Figure, Resonances, Verify };
enum class Format { Csv, PlotScript };

struct RunConfig {
  Command command = Command::Point;

  BarrierSystem system;  // point, resonances, and the fixed part of a sweep
  double energy = 0.0;

  SweepSpec sweep;  // sweep only, fully populated
  std::optional<FigureId> figure;

  double l_min = 0.0;  // resonances
  double l_max = 0.0;
  std::size_t scan_points = 2000;

  std::size_t verify_points = 200;
  std::uint64_t seed = 20261018;

  std::optional<std::filesystem::path> out;
  Format format = Format::Csv;
};

/// key=value lines; '#' starts a comment; blank lines ignored.
/// Throws UsageError for malformed lines or unknown keys, IoError if unreadable.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Parses argv (without the program name). Values from --config are applied
/// first and command-line flags override them. Regime and parameter checks
/// run here, before anything is computed.
RunConfig parse_config(const std::vector<std::string>& args);

/// Keys accepted in config files and as --key flags.
const std::vector<std::string>& known_keys();

}  // namespace dtunnel::cli
