// Copyright 2026 The qbm-gse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for the experiment runner.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbm/experiment.hpp"

namespace {

constexpr const char* kPrecedence =
    "Settings are resolved in three layers: built-in defaults, then the JSON\n"
    "document given by --config, then command-line flags. A flag always wins\n"
    "over the same field in the config file.";

// Raw flag values; unset optionals leave the config-file value alone.
struct FlagValues {
  std::optional<std::string> config_path;
  std::optional<std::string> hamiltonian;
  std::optional<std::string> ansatz;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<std::vector<double>> epsilons;
  std::optional<std::string> shots;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::int64_t> max_iters;
  std::optional<std::string> delta;
  std::optional<std::vector<double>> theta;
  std::optional<std::vector<std::string>> grid;
  std::optional<double> fd_step;
  std::optional<double> tolerance;
  std::optional<int> num_params;
  std::optional<double> alpha_norm;
  std::optional<double> sampler_t_max;
  std::optional<std::int64_t> sampler_grid;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

qbm::GridAxis parse_axis(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 4) {
    throw qbm::ConfigError("grid axis '" + spec + "' must look like param:lo:hi:points");
  }
  try {
    return {std::stoi(parts[0]), std::stod(parts[1]), std::stod(parts[2]), std::stoi(parts[3])};
  } catch (const std::exception&) {
    throw qbm::ConfigError("grid axis '" + spec + "' has a malformed number");
  }
}

qbm::ExperimentConfig resolve(const std::string& command, const FlagValues& f) {
  qbm::ExperimentConfig cfg;
  if (f.config_path) {
    std::ifstream in(*f.config_path);
    if (!in) throw qbm::ConfigError("cannot open config file " + *f.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = qbm::config_from_json(buf.str());
  }
  cfg.command = command;
  if (f.hamiltonian) cfg.hamiltonian_path = *f.hamiltonian;
  if (f.ansatz) cfg.ansatz_path = *f.ansatz;
  if (f.seed) cfg.seed = *f.seed;
  if (f.epsilon) cfg.epsilon = *f.epsilon;
  if (f.epsilons) cfg.epsilons = *f.epsilons;
  if (f.shots) {
    if (*f.shots == "auto") {
      cfg.shots = {qbm::ShotSpec::Kind::kAuto, 0};
    } else if (*f.shots == "exact") {
      cfg.shots = {qbm::ShotSpec::Kind::kExact, 0};
    } else {
      std::size_t used = 0;
      std::int64_t n = 0;
      try {
        n = std::stoll(*f.shots, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != f.shots->size()) {
        throw qbm::ConfigError("--shots expects an integer, auto or exact");
      }
      cfg.shots = {qbm::ShotSpec::Kind::kFixed, n};
    }
  }
  if (f.out) cfg.output_path = *f.out;
  if (f.format) {
    cfg.format = *f.format == "jsonl" ? qbm::OutputFormat::kJsonLines : qbm::OutputFormat::kCsv;
  }
  if (f.max_iters) cfg.max_iterations = *f.max_iters;
  if (f.delta) {
    if (*f.delta == "auto") {
      cfg.delta.reset();
    } else {
      try {
        cfg.delta = std::stod(*f.delta);
      } catch (const std::exception&) {
        throw qbm::ConfigError("--delta expects a number or auto");
      }
    }
  }
  if (f.theta) cfg.theta = *f.theta;
  if (f.grid) {
    cfg.grid.clear();
    for (const auto& a : *f.grid) cfg.grid.push_back(parse_axis(a));
  }
  if (f.fd_step) cfg.fd_step = *f.fd_step;
  if (f.tolerance) cfg.tolerance = *f.tolerance;
  if (f.num_params) cfg.num_parameters = *f.num_params;
  if (f.alpha_norm) cfg.alpha_one_norm = *f.alpha_norm;
  if (f.sampler_t_max) cfg.sampler_t_max = *f.sampler_t_max;
  if (f.sampler_grid) cfg.sampler_grid_size = *f.sampler_grid;
  return cfg;
}

void add_common(CLI::App* sub, FlagValues& f) {
  sub->add_option("--config", f.config_path, "JSON config document (flags override it)");
  sub->add_option("--hamiltonian", f.hamiltonian, "Hamiltonian file: one `coeff PAULI` per line");
  sub->add_option("--ansatz", f.ansatz, "Ansatz file: one Pauli string per line");
  sub->add_option("--seed", f.seed, "Master RNG seed");
  sub->add_option("--epsilon", f.epsilon, "Target stationarity in (0, 1)");
  sub->add_option("--shots", f.shots, "Shot budget: <n>, auto (Hoeffding) or exact");
  sub->add_option("--out", f.out, "Output file (stdout when omitted)");
  sub->add_option("--format", f.format, "Table format")->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--max-iters", f.max_iters, "Cap on training iterations");
  sub->add_option("--delta", f.delta, "Bound on f(theta0) - inf f: <f> or auto");
  sub->add_option("--theta", f.theta, "Parameter vector, comma separated")->delimiter(',');
  sub->add_option("--sampler-tmax", f.sampler_t_max, "Time-sampler tabulation cutoff");
  sub->add_option("--sampler-grid", f.sampler_grid, "Time-sampler tabulation nodes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-state energy learning with quantum Boltzmann machines, simulated exactly.",
               "qbm"};
  app.footer(kPrecedence);
  app.require_subcommand(1);

  FlagValues f;
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"landscape", "Scan f and |grad f| over a 1- or 2-D parameter grid"},
      {"grad-check", "Compare the analytic gradient with central differences"},
      {"estimate", "One seeded shot-based gradient estimate against the exact gradient"},
      {"train", "Run the stochastic-gradient trainer"},
      {"complexity", "Tabulate iteration and sample counts over a list of epsilons"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->footer(kPrecedence);
    add_common(sub, f);
    const std::string name = c.name;
    if (name == "landscape") {
      sub->add_option("--grid", f.grid, "Axis param:lo:hi:points (give once or twice)");
    } else if (name == "grad-check") {
      sub->add_option("--fd-step", f.fd_step, "Central-difference step");
      sub->add_option("--tolerance", f.tolerance, "Largest accepted |analytic - FD|");
    } else if (name == "complexity") {
      sub->add_option("--epsilons", f.epsilons, "Comma-separated epsilon list")->delimiter(',');
      sub->add_option("--num-params", f.num_params, "J, when no model files are given");
      sub->add_option("--alpha-norm", f.alpha_norm, "||alpha||_1, when no model files are given");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  qbm::ExperimentConfig cfg;
  try {
    cfg = resolve(app.get_subcommands().front()->get_name(), f);
  } catch (const qbm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return qbm::run_experiment(cfg);
}
