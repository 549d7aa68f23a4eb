// csfourier — batch driver for the harmonic-analysis experiments.
//
// Each subcommand runs one experiment on one space, writes a line-oriented
// result table, prints a summary, and exits nonzero when a check fails.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "csf/experiments.hpp"

namespace {

struct CommonArgs {
  std::string space;  // empty = take from config, else default S2
  std::string out;
  std::string config;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--space", args->space, "space spec, e.g. S2, RP3, CP2, S2xT1");
  cmd->add_option("--out", args->out, "result table path");
  cmd->add_option("--config", args->config, "key-value config file");
  cmd->add_option("--seed", args->seed, "seed for randomized probe grids");
}

csf::ExperimentConfig assemble(const CommonArgs& common,
                               const std::string& experiment,
                               const std::map<std::string, std::string>& params) {
  csf::ExperimentConfig cfg;
  if (!common.config.empty()) {
    std::ifstream in(common.config);
    if (!in) throw std::runtime_error("cannot read config " + common.config);
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = csf::parse_config_file(buf.str());
  }
  cfg.experiment = experiment;
  if (!common.space.empty()) cfg.space = common.space;
  if (cfg.space.empty()) cfg.space = "S2";
  if (!common.out.empty()) cfg.out_path = common.out;
  cfg.seed = common.seed ? common.seed : cfg.seed;
  for (const auto& [k, v] : params) cfg.params[k] = v;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical-transform experiments on compact symmetric spaces"};
  app.require_subcommand(1);

  CommonArgs common;
  std::map<std::string, std::string> params;

  auto number_opt = [&params](CLI::App* cmd, const std::string& flag,
                              const std::string& key, const std::string& help) {
    cmd->add_option_function<double>(
        flag,
        [&params, key](const double& v) {
          std::ostringstream os;
          os.precision(17);
          os << v;
          params[key] = os.str();
        },
        help);
  };
  auto string_opt = [&params](CLI::App* cmd, const std::string& flag,
                              const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&params, key](const std::string& v) { params[key] = v; }, help);
  };

  auto* lattice = app.add_subcommand("lattice", "enumerate the weight semilattice");
  add_common(lattice, &common);
  number_opt(lattice, "--max-norm", "max_norm", "norm bound");

  auto* schur = app.add_subcommand("schur", "orthogonality residual matrix");
  add_common(schur, &common);
  number_opt(schur, "--max-norm", "max_norm", "norm bound");
  number_opt(schur, "--tol", "tol", "residual tolerance");

  auto* roundtrip = app.add_subcommand("roundtrip", "transform/synthesis round trip");
  add_common(roundtrip, &common);
  number_opt(roundtrip, "--bump-r", "bump_r", "bump radius");
  number_opt(roundtrip, "--max-norm", "max_norm", "truncation");
  number_opt(roundtrip, "--tol", "tol", "sup error tolerance");

  auto* decay = app.add_subcommand("decay", "coefficient decay stabilization");
  add_common(decay, &common);
  number_opt(decay, "--bump-r", "bump_r", "bump radius");
  number_opt(decay, "--trunc1", "trunc1", "first truncation");
  number_opt(decay, "--trunc2", "trunc2", "second truncation");
  number_opt(decay, "--kmax", "kmax", "largest weight power");
  number_opt(decay, "--ratio-tol", "ratio_tol", "stabilization ratio bound");

  auto* type = app.add_subcommand("type-recovery", "support radius from growth");
  add_common(type, &common);
  number_opt(type, "--bump-r", "bump_r", "bump radius");
  number_opt(type, "--atom-s", "atom_s", "atom radius");
  number_opt(type, "--sigma-max", "sigma_max", "sweep extent");
  number_opt(type, "--tol-rel", "tol_rel", "relative tolerance");

  auto* singsupp = app.add_subcommand("singsupp", "singular-support growth test");
  add_common(singsupp, &common);
  string_opt(singsupp, "--case", "case", "delta | atom | mixed");
  number_opt(singsupp, "--s", "s", "tested singular-support radius");
  number_opt(singsupp, "--atom-s", "atom_s", "atom radius");
  number_opt(singsupp, "--bump-r", "bump_r", "density radius");
  string_opt(singsupp, "--expect", "expect", "pass | fail");

  auto* solve = app.add_subcommand("solve", "invariant-operator solvability");
  add_common(solve, &common);
  string_opt(solve, "--case", "case", "shifted | constants");
  number_opt(solve, "--max-norm", "max_norm", "lattice bound");
  number_opt(solve, "--tol", "tol", "residual tolerance");
  string_opt(solve, "--expect", "expect", "solvable | unsolvable");

  CLI11_PARSE(app, argc, argv);

  try {
    auto* cmd = app.get_subcommands().front();
    auto cfg = assemble(common, cmd->get_name(), params);
    return csf::run_experiment(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
