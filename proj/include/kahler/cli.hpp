#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kahler/io.hpp"

namespace kahler {

enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitConfigError = 2,
  kExitNumericalError = 3,
};

struct RunConfig {
  std::string command;
  std::string registry;                  // variety or bundle name
  std::string poly_path;                 // alternative to registry
  std::string sigma_path;                // base group element
  std::string direction = "diag";        // "diag", "random:<seed>" or a matrix file
  double t = 0.0;                        // sigma = exp(t c) sigma_file
  std::vector<double> t_grid{0.0};
  std::vector<std::string> energies{"F0"};
  std::vector<std::string> checks;       // verify: empty means the default suite
  long samples = 20000;                  // lines (or points) per integral
  long ambient_samples = 0;              // points on P^{m+1}; 0 means 4 * samples
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  int max_iters = 200;
  int threads = 0;
  std::string out;                       // output directory; empty: stdout only

  /// Throws ConfigError on invalid values.
  void validate() const;
  json to_json() const;
  static RunConfig from_json(const json& j);
};

/// Runs the command line; returns the process exit code. Manifests go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes a validated configuration and returns the manifest.
json execute(const RunConfig& config, int& exit_code);

}  // namespace kahler
