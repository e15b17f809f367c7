#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace discframe::cli {

// One sequence factor as named on the command line. `family` is one of
// geometric | polynomial | explicit | geometric_with_phases.
struct FactorSpec {
  std::string family;
  double param = 0.0;
  double phase_step = 0.0;
  long long count = 0;
  std::vector<std::complex<double>> points;  // explicit family only
};

struct ExperimentConfig {
  std::string command;  // gen|carleson|bounds|tensor|interp|reconstruct|report
  FactorSpec factor_a;
  FactorSpec factor_b;           // tensor only
  std::vector<long long> k_list;  // empty → defaulted per command
  double tol = 1e-12;
  bool has_seed = false;
  long long seed = 0;
  long long trials = 50;
  std::string format = "csv";
  std::string out_path;  // empty → stdout
};

// Bad flags, bad values, contradictory or missing settings. Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical pipeline refused the inputs or failed to converge. Exit code 3.
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what)
      : std::runtime_error(what) {}
};

// --help and friends: not an error, exit code 0 after the text is printed.
class HelpRequested : public std::runtime_error {
 public:
  explicit HelpRequested(std::string text)
      : std::runtime_error("help requested"), text_(std::move(text)) {}
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

// Parse argv (and an optional --config JSON file whose fields mirror the
// flags; explicit command-line flags win over file values), then validate.
// Throws ConfigError on any invalid or missing setting.
ExperimentConfig parse_config(int argc, const char* const* argv);

// Compact one-token description of a factor, e.g. "geometric:0.5:12";
// used for provenance echoes and error messages.
std::string describe(const FactorSpec& factor);

}  // namespace discframe::cli
