#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace scp::cli {

/// Every setting a subcommand can take. A JSON file passed with --config
/// fills these first; flags on the command line override it.
struct RunConfig {
  std::string command;

  // files
  std::string input;
  std::string targets;
  std::vector<std::string> target;  // "x,y"
  std::string output = "-";
  std::string sidecar;
  std::string json;
  std::string x_column = "s_x";
  std::string y_column = "s_y";
  std::string response_column = "y";
  bool rescale = false;
  bool center = true;

  // simulation and benchmarks
  std::vector<int> scenario{1};
  std::vector<std::size_t> n{20};
  std::optional<std::uint64_t> seed;
  std::size_t replicates = 1;
  bool by_column = false;

  // methods
  std::string method = "gscp";
  std::vector<std::string> methods{"gscp", "kriging"};
  double alpha = 0.1;
  double eta = 0.1;
  std::vector<double> etas{0.05, 0.1, 0.2, 0.5, 1.0};
  std::size_t m = 50;
  std::optional<std::size_t> M;
  std::size_t n_validation = 100;

  // covariance: all four fixed, or fitted when none is given
  std::optional<double> nugget;
  std::optional<double> partial_sill;
  std::optional<double> range;
  std::optional<double> smoothness;
  std::vector<double> kappa_grid{0.3, 0.5, 0.7, 1.0, 1.5, 2.0};

  std::size_t jobs = 0;
};

/// JSON keys accepted in a config file, each matching a --flag of the same
/// name with '_' replaced by '-'.
const std::vector<std::string>& run_config_keys();

/// Throws scp::InvalidArgument on unknown keys or values of the wrong type.
void apply_config_json(RunConfig& config, const std::string& text);

/// Exit codes: 0 success, 1 runtime failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scp::cli
