#include "dtunnel/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include <CLI11.hpp>

#include "dtunnel/errors.hpp"

namespace dtunnel::cli {

namespace {

using Values = std::map<std::string, std::string>;

struct CommandInfo {
  Command command;
  const char* name;
  const char* description;
  std::vector<std::string> keys;
};

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table{
      {Command::Point, "point", "Times and |T|^2 at one (E, V0, a, l) point",
       {"E", "V0", "a", "l", "m", "out"}},
      {Command::Sweep, "sweep", "Sweep a, l or E over a uniform grid",
       {"swept", "lo", "hi", "points", "E", "V0", "a", "l", "m", "nr", "opaque", "out"}},
      {Command::Figure, "figure", "Dataset or gnuplot script for figure 2A, 2B, 2C, 3A or 3B",
       {"figure", "out", "format"}},
      {Command::Resonances, "resonances", "Reflectionless separations l in [lmin, lmax]",
       {"E", "V0", "a", "m", "lmin", "lmax", "points", "out"}},
      {Command::Verify, "verify", "Cross-check closed forms against the direct solve",
       {"points", "seed"}},
  };
  return table;
}

const char* key_help(const std::string& key) {
  static const std::map<std::string, const char*> help{
      {"E", "total energy including rest mass"},
      {"V0", "barrier height"},
      {"a", "barrier width"},
      {"l", "barrier separation"},
      {"m", "particle mass (default 1)"},
      {"swept", "swept parameter: a, l or E"},
      {"lo", "first grid value"},
      {"hi", "last grid value"},
      {"points", "number of grid, scan or random points"},
      {"nr", "add the Schroedinger phase time column"},
      {"opaque", "add saturated-time columns (default on)"},
      {"figure", "figure id: 2A, 2B, 2C, 3A, 3B"},
      {"lmin", "lower end of the separation scan"},
      {"lmax", "upper end of the separation scan"},
      {"out", "output path (default stdout)"},
      {"format", "csv or plot-script"},
      {"seed", "random seed for verify"},
  };
  return help.at(key);
}

bool is_flag(const std::string& key) { return key == "nr" || key == "opaque"; }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

class Reader {
 public:
  Reader(const Values& values, const CommandInfo& info) : values_(values), info_(info) {}

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      throw UsageError("missing required key '" + key + "' for command " + info_.name);
    }
    return it->second;
  }

  double number(const std::string& key) const {
    const std::string& text = raw(key);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v)) {
      throw UsageError("key '" + key + "': '" + text + "' is not a finite number");
    }
    return v;
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::uint64_t count(const std::string& key) const {
    const std::string& text = raw(key);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
      throw UsageError("key '" + key + "': '" + text + "' is not a non-negative integer");
    }
    return v;
  }

  std::uint64_t count_or(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? count(key) : fallback;
  }

  bool boolean_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    std::string text = raw(key);
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw UsageError("key '" + key + "': '" + raw(key) + "' is not a boolean");
  }

 private:
  const Values& values_;
  const CommandInfo& info_;
};

BarrierSystem read_system(const Reader& r, bool need_a, bool need_l) {
  BarrierSystem s;
  s.mass = r.number_or("m", 1.0);
  s.V0 = r.number("V0");
  if (need_a) s.a = r.number("a");
  if (need_l) s.l = r.number("l");
  return s;
}

void fill_sweep(RunConfig& cfg, const Reader& r) {
  const auto swept = parse_swept(r.raw("swept"));
  if (!swept) throw UsageError("key 'swept': '" + r.raw("swept") + "' is not one of a, l, E");
  SweepSpec& spec = cfg.sweep;
  spec.swept = *swept;
  spec.lo = r.number("lo");
  spec.hi = r.number("hi");
  spec.points = r.count("points");
  // The swept key is taken from the grid; a fixed value for it is ignored.
  spec.fixed = read_system(r, *swept != SweptParameter::Width, *swept != SweptParameter::Separation);
  spec.energy = *swept == SweptParameter::Energy ? 0.0 : r.number("E");
  spec.include_nr = r.boolean_or("nr", false);
  spec.include_opaque_reference = r.boolean_or("opaque", true);
  validate(spec);
}

RunConfig build(const CommandInfo& info, const Values& values) {
  const Reader r(values, info);
  RunConfig cfg;
  cfg.command = info.command;
  if (r.has("out")) cfg.out = std::filesystem::path(r.raw("out"));

  switch (info.command) {
    case Command::Point:
      cfg.system = read_system(r, true, true);
      cfg.energy = r.number("E");
      validate(cfg.system);
      require_evanescent(cfg.energy, cfg.system);
      break;
    case Command::Sweep:
      fill_sweep(cfg, r);
      break;
    case Command::Figure: {
      cfg.figure = parse_figure(r.raw("figure"));
      if (!cfg.figure) {
        throw UsageError("key 'figure': '" + r.raw("figure") + "' is not one of 2A, 2B, 2C, 3A, 3B");
      }
      if (r.has("format")) {
        const std::string& f = r.raw("format");
        if (f == "csv") {
          cfg.format = Format::Csv;
        } else if (f == "plot-script") {
          cfg.format = Format::PlotScript;
        } else {
          throw UsageError("key 'format': '" + f + "' is not csv or plot-script");
        }
      }
      if (cfg.format == Format::PlotScript && !cfg.out) {
        throw UsageError("missing required key 'out' (the CSV to plot) for --format plot-script");
      }
      break;
    }
    case Command::Resonances:
      cfg.system = read_system(r, true, false);
      cfg.energy = r.number("E");
      cfg.l_min = r.number("lmin");
      cfg.l_max = r.number("lmax");
      cfg.scan_points = r.count_or("points", cfg.scan_points);
      if (!(cfg.l_min >= 0.0 && cfg.l_min < cfg.l_max)) {
        throw UsageError("keys 'lmin', 'lmax': need 0 <= lmin < lmax");
      }
      if (cfg.scan_points < 3) throw UsageError("key 'points': resonance scan needs at least 3");
      cfg.system.l = cfg.l_min;
      validate(cfg.system);
      require_evanescent(cfg.energy, cfg.system);
      break;
    case Command::Verify:
      cfg.verify_points = r.count_or("points", cfg.verify_points);
      cfg.seed = r.count_or("seed", cfg.seed);
      if (cfg.verify_points == 0) throw UsageError("key 'points': verify needs at least 1 point");
      break;
  }
  return cfg;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::set<std::string> all;
    for (const auto& c : commands()) all.insert(c.keys.begin(), c.keys.end());
    return std::vector<std::string>(all.begin(), all.end());
  }();
  return keys;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  const auto& keys = known_keys();
  Values values;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const std::string body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = path.string() + ":" + std::to_string(number);
    if (eq == std::string::npos) throw UsageError(where + ": expected key=value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw UsageError(where + ": unknown key '" + key + "'");
    }
    if (value.empty()) throw UsageError(where + ": key '" + key + "' has no value");
    values[key] = value;
  }
  if (in.bad()) throw IoError("error reading config file " + path.string());
  return values;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Tunneling times for a relativistic particle crossing two square barriers",
               "dtunnel"};
  app.require_subcommand(1);
  // Lets --config appear after the subcommand name; set before subcommands so they inherit it.
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; flags on the command line win");

  // Every value passes through the same string map so file and flag input
  // share conversion and error messages.
  Values from_cli;
  std::map<std::string, bool> flags;
  std::vector<std::pair<const CommandInfo*, CLI::App*>> subs;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  for (const CommandInfo& info : commands()) {
    CLI::App* sub = app.add_subcommand(info.name, info.description);
    for (const std::string& key : info.keys) {
      CLI::Option* opt = nullptr;
      if (key == "figure") {
        opt = sub->add_option("figure", from_cli[key], key_help(key));
      } else if (key == "opaque") {
        opt = sub->add_flag("--opaque,!--no-opaque", flags[key], key_help(key));
      } else if (is_flag(key)) {
        opt = sub->add_flag("--" + key, flags[key], key_help(key));
      } else {
        opt = sub->add_option("--" + key, from_cli[key], key_help(key));
      }
      options.emplace_back(key, opt);
    }
    subs.emplace_back(&info, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto chosen = app.get_subcommands();
    throw HelpRequested(chosen.empty() ? app.help() : chosen.front()->help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto chosen = std::find_if(subs.begin(), subs.end(),
                                   [](const auto& s) { return s.second->parsed(); });
  const CommandInfo& info = *chosen->first;

  Values merged;
  if (!config_path.empty()) merged = read_config_file(config_path);
  for (const auto& [key, opt] : options) {
    if (opt->count() == 0) continue;
    merged[key] = is_flag(key) ? (flags[key] ? "true" : "false") : from_cli[key];
  }
  // Keys that belong to other commands may sit in a shared config file.
  std::erase_if(merged, [&info](const auto& kv) {
    return std::find(info.keys.begin(), info.keys.end(), kv.first) == info.keys.end();
  });
  return build(info, merged);
}

}  // namespace dtunnel::cli
