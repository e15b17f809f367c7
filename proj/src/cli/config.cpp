#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

namespace discframe::cli {
namespace {

const std::set<std::string> kCommands = {
    "gen", "carleson", "bounds", "tensor", "interp", "reconstruct", "report"};
const std::set<std::string> kFamilies = {"geometric", "polynomial", "explicit",
                                         "geometric_with_phases"};

// Shortest decimal form that parses back to the same double.
std::string fmt_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& token, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(flag + ": '" + token + "' is not a number");
  }
}

long long parse_int(const std::string& token, const std::string& flag) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(flag + ": '" + token + "' is not an integer");
  }
}

// family:param:count, optionally :phase_step for geometric_with_phases.
FactorSpec parse_shorthand(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4)
    throw ConfigError(flag + ": expected family:param:count[:phase_step], got '" +
                      text + "'");
  FactorSpec f;
  f.family = parts[0];
  if (f.family == "explicit")
    throw ConfigError(flag + ": explicit factors cannot be written in shorthand");
  f.param = parse_double(parts[1], flag);
  f.count = parse_int(parts[2], flag);
  if (parts.size() == 4) {
    if (f.family != "geometric_with_phases")
      throw ConfigError(flag + ": a fourth field is only valid for "
                               "geometric_with_phases");
    f.phase_step = parse_double(parts[3], flag);
  }
  return f;
}

// "re,im;re,im;…" — a bare real per entry is accepted too.
std::vector<std::complex<double>> parse_points(const std::string& text,
                                               const std::string& flag) {
  std::vector<std::complex<double>> points;
  for (const auto& entry : split(text, ';')) {
    const auto rectangular = split(entry, ',');
    if (rectangular.size() == 1)
      points.emplace_back(parse_double(rectangular[0], flag), 0.0);
    else if (rectangular.size() == 2)
      points.emplace_back(parse_double(rectangular[0], flag),
                          parse_double(rectangular[1], flag));
    else
      throw ConfigError(flag + ": point '" + entry + "' is not re or re,im");
  }
  return points;
}

std::vector<long long> parse_klist(const std::string& text) {
  std::vector<long long> ks;
  for (const auto& token : split(text, ','))
    ks.push_back(parse_int(token, "--klist"));
  return ks;
}

void validate_factor(const FactorSpec& f, const std::string& flag) {
  if (f.family.empty())
    throw ConfigError(flag + ": no sequence family given");
  if (!kFamilies.count(f.family))
    throw ConfigError(flag + ": unknown family '" + f.family +
                      "' (expected geometric, polynomial, explicit, or "
                      "geometric_with_phases)");
  if (f.family == "explicit") {
    if (f.points.empty())
      throw ConfigError(flag + ": explicit family needs --points");
    if (f.count != 0 &&
        f.count != static_cast<long long>(f.points.size()))
      throw ConfigError(flag + ": --count disagrees with the number of points");
    return;
  }
  if (!f.points.empty())
    throw ConfigError(flag + ": --points requires the explicit family");
  if (f.family == "polynomial") {
    if (!(f.param > 1.0))
      throw ConfigError(flag + ": param out of range (polynomial needs p > 1)");
  } else if (!(f.param > 0.0 && f.param < 1.0)) {
    throw ConfigError(flag + ": param out of range (need 0 < c < 1)");
  }
  if (f.count < 1) throw ConfigError(flag + ": --count must be >= 1");
}

void validate(ExperimentConfig& cfg) {
  if (cfg.command.empty())
    throw ConfigError(
        "no command given; expected one of gen, carleson, bounds, tensor, "
        "interp, reconstruct, report");
  if (!kCommands.count(cfg.command))
    throw ConfigError("unknown command '" + cfg.command + "'");
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("--format must be csv or json");
  if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (cfg.trials < 1) throw ConfigError("--trials must be >= 1");

  const bool uses_klist =
      cfg.command == "tensor" || cfg.command == "bounds" ||
      cfg.command == "report";
  if (!uses_klist && !cfg.k_list.empty())
    throw ConfigError("--klist is not used by '" + cfg.command + "'");
  for (long long K : cfg.k_list)
    if (K < 1) throw ConfigError("--klist entries must be >= 1");
  std::sort(cfg.k_list.begin(), cfg.k_list.end());
  cfg.k_list.erase(std::unique(cfg.k_list.begin(), cfg.k_list.end()),
                   cfg.k_list.end());

  if (cfg.command == "tensor") {
    if (cfg.factor_a.family.empty() || cfg.factor_b.family.empty())
      throw ConfigError("tensor requires both --a and --b factors");
    validate_factor(cfg.factor_a, "--a");
    validate_factor(cfg.factor_b, "--b");
    const long long cap = std::min(cfg.factor_a.count, cfg.factor_b.count);
    if (cfg.k_list.empty()) cfg.k_list = {cap};
    if (cfg.k_list.back() > cap)
      throw ConfigError("--klist exceeds the factor counts");
  } else {
    if (!cfg.factor_b.family.empty())
      throw ConfigError("--b is only used by 'tensor'");
    validate_factor(cfg.factor_a, "--family");
    if (cfg.factor_a.family == "explicit" && cfg.factor_a.count == 0)
      cfg.factor_a.count = static_cast<long long>(cfg.factor_a.points.size());
    if (uses_klist) {
      if (cfg.k_list.empty()) cfg.k_list = {cfg.factor_a.count};
      if (cfg.k_list.back() > cfg.factor_a.count)
        throw ConfigError("--klist exceeds --count");
    }
  }

  if ((cfg.command == "interp" || cfg.command == "reconstruct") &&
      !cfg.has_seed)
    throw ConfigError("--seed is required for '" + cfg.command +
                      "' (randomized runs must be reproducible)");
}

// Raw option values as they appear on the command line, before file merge.
struct RawFlags {
  std::string command, family, points, a, b, klist, format, out, config;
  double param = 0.0, phase_step = 0.0, tol = 0.0;
  long long count = 0, seed = 0, trials = 0;
};

void apply_file_value(ExperimentConfig& cfg, const std::string& key,
                      const nlohmann::json& value) {
  const auto as_double = [&](const char* k) {
    if (!value.is_number())
      throw ConfigError(std::string("config file: '") + k +
                        "' must be a number");
    return value.get<double>();
  };
  const auto as_int = [&](const char* k) {
    if (!value.is_number_integer())
      throw ConfigError(std::string("config file: '") + k +
                        "' must be an integer");
    return value.get<long long>();
  };
  const auto as_string = [&](const char* k) {
    if (!value.is_string())
      throw ConfigError(std::string("config file: '") + k +
                        "' must be a string");
    return value.get<std::string>();
  };

  if (key == "command") cfg.command = as_string("command");
  else if (key == "family") cfg.factor_a.family = as_string("family");
  else if (key == "param") cfg.factor_a.param = as_double("param");
  else if (key == "phase_step") cfg.factor_a.phase_step = as_double("phase_step");
  else if (key == "count") cfg.factor_a.count = as_int("count");
  else if (key == "points") {
    if (!value.is_array())
      throw ConfigError("config file: 'points' must be an array");
    for (const auto& entry : value) {
      if (entry.is_number())
        cfg.factor_a.points.emplace_back(entry.get<double>(), 0.0);
      else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
               entry[1].is_number())
        cfg.factor_a.points.emplace_back(entry[0].get<double>(),
                                         entry[1].get<double>());
      else
        throw ConfigError(
            "config file: each point must be a number or an [re, im] pair");
    }
  } else if (key == "a") {
    cfg.factor_a = parse_shorthand(as_string("a"), "config file 'a'");
  } else if (key == "b") {
    cfg.factor_b = parse_shorthand(as_string("b"), "config file 'b'");
  } else if (key == "klist") {
    if (value.is_string()) {
      cfg.k_list = parse_klist(value.get<std::string>());
    } else if (value.is_array()) {
      cfg.k_list.clear();
      for (const auto& entry : value) {
        if (!entry.is_number_integer())
          throw ConfigError("config file: 'klist' entries must be integers");
        cfg.k_list.push_back(entry.get<long long>());
      }
    } else {
      throw ConfigError("config file: 'klist' must be an array or string");
    }
  } else if (key == "tol") cfg.tol = as_double("tol");
  else if (key == "seed") { cfg.seed = as_int("seed"); cfg.has_seed = true; }
  else if (key == "trials") cfg.trials = as_int("trials");
  else if (key == "format") cfg.format = as_string("format");
  else if (key == "out") cfg.out_path = as_string("out");
  else
    throw ConfigError("config file: unknown field '" + key + "'");
}

}  // namespace

std::string describe(const FactorSpec& f) {
  if (f.family == "explicit")
    return "explicit:" + std::to_string(
                             f.count ? f.count
                                     : static_cast<long long>(f.points.size()));
  std::string text = f.family + ":" + fmt_double(f.param) + ":" +
                     std::to_string(f.count);
  if (f.family == "geometric_with_phases")
    text += ":" + fmt_double(f.phase_step);
  return text;
}

ExperimentConfig parse_config(int argc, const char* const* argv) {
  RawFlags raw;
  CLI::App app{
      "discframe — dynamical-sampling frame experiments on the unit disc"};
  app.add_option("command", raw.command,
                 "gen | carleson | bounds | tensor | interp | reconstruct | "
                 "report");
  auto* o_family = app.add_option(
      "--family", raw.family,
      "sequence family: geometric | polynomial | explicit | "
      "geometric_with_phases");
  auto* o_param = app.add_option("--param", raw.param,
                                 "family parameter (base c or power p)");
  auto* o_phase = app.add_option("--phase-step", raw.phase_step,
                                 "phase increment for geometric_with_phases");
  auto* o_count = app.add_option("--count", raw.count, "sequence length K");
  auto* o_points = app.add_option(
      "--points", raw.points, "explicit points 're,im;re,im;…' (im optional)");
  auto* o_a = app.add_option("--a", raw.a,
                             "tensor factor A as family:param:count[:phase]");
  auto* o_b = app.add_option("--b", raw.b,
                             "tensor factor B as family:param:count[:phase]");
  auto* o_klist =
      app.add_option("--klist", raw.klist, "truncation sizes, e.g. 2,4,6,8");
  auto* o_trials =
      app.add_option("--trials", raw.trials, "number of randomized trials");
  auto* o_tol = app.add_option("--tol", raw.tol, "numerical tolerance");
  auto* o_seed = app.add_option("--seed", raw.seed,
                                "RNG seed (required for interp/reconstruct)");
  auto* o_format =
      app.add_option("--format", raw.format, "output format: csv | json");
  auto* o_out =
      app.add_option("--out", raw.out, "output file path (default: stdout)");
  app.add_option("--config", raw.config,
                 "JSON config file; command-line flags override its fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  ExperimentConfig cfg;

  if (!raw.config.empty()) {
    std::ifstream file(raw.config);
    if (!file)
      throw ConfigError("--config: cannot read '" + raw.config + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(file);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("--config: " + std::string(e.what()));
    }
    if (!doc.is_object())
      throw ConfigError("--config: top level must be a JSON object");
    for (const auto& [key, value] : doc.items())
      apply_file_value(cfg, key, value);
  }

  // Command-line flags override anything the file set.
  if (!raw.command.empty()) cfg.command = raw.command;
  if (o_family->count()) cfg.factor_a.family = raw.family;
  if (o_param->count()) cfg.factor_a.param = raw.param;
  if (o_phase->count()) cfg.factor_a.phase_step = raw.phase_step;
  if (o_count->count()) cfg.factor_a.count = raw.count;
  if (o_points->count())
    cfg.factor_a.points = parse_points(raw.points, "--points");
  if (o_a->count()) cfg.factor_a = parse_shorthand(raw.a, "--a");
  if (o_b->count()) cfg.factor_b = parse_shorthand(raw.b, "--b");
  if (o_klist->count()) cfg.k_list = parse_klist(raw.klist);
  if (o_trials->count()) cfg.trials = raw.trials;
  if (o_tol->count()) cfg.tol = raw.tol;
  if (o_seed->count()) {
    cfg.seed = raw.seed;
    cfg.has_seed = true;
  }
  if (o_format->count()) cfg.format = raw.format;
  if (o_out->count()) cfg.out_path = raw.out;

  validate(cfg);
  return cfg;
}

}  // namespace discframe::cli
