#ifndef CSF_EXPERIMENTS_HPP_
#define CSF_EXPERIMENTS_HPP_

#include <cstdint>
#include <map>
#include <ostream>
#include <string>

// Batch experiment driver behind the CLI: each experiment writes a
// machine-readable result table and a human-readable summary, and reports
// failure through its exit status.  Thresholds default to the project's
// acceptance values and may be overridden per run.

namespace csf {

struct ExperimentConfig {
  std::string space;       // space spec string, e.g. "S2"
  std::string experiment;  // lattice | schur | roundtrip | decay |
                           // type-recovery | singsupp | solve
  std::map<std::string, std::string> params;
  std::string out_path;    // result table destination ("" = derived name)
  std::uint64_t seed = 0;  // controls randomized probe grids

  double num(const std::string& key, double fallback) const;
  std::string str(const std::string& key, const std::string& fallback) const;
};

// Loads "key value" lines (comments with '#') into a config; the space and
// experiment keys are recognized, everything else lands in params.
ExperimentConfig parse_config_file(const std::string& text);

// Runs one experiment; returns 0 when every check in it passed.
int run_experiment(const ExperimentConfig& config, std::ostream& summary);

}  // namespace csf

#endif  // CSF_EXPERIMENTS_HPP_
