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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qbm/sgd.hpp"
#include "qbm/types.hpp"

namespace qbm {

enum class OutputFormat { kCsv, kJsonLines };

/// One scanned parameter: `points` evenly spaced values in [lo, hi].
struct GridAxis {
  int parameter = 0;
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;

  friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

/// Shot budget: Hoeffding formula, an explicit count, or the exact gradient.
struct ShotSpec {
  enum class Kind { kAuto, kFixed, kExact };
  Kind kind = Kind::kAuto;
  std::int64_t count = 0;

  friend bool operator==(const ShotSpec&, const ShotSpec&) = default;
};

struct ExperimentConfig {
  std::string command;
  std::string hamiltonian_path;
  std::string ansatz_path;
  std::optional<std::vector<double>> theta;
  std::vector<GridAxis> grid;
  double epsilon = 0.1;
  std::vector<double> epsilons;
  std::uint64_t seed = 0;
  ShotSpec shots;
  std::string output_path;
  OutputFormat format = OutputFormat::kCsv;
  std::optional<std::int64_t> max_iterations;
  /// Absent means "auto": the certified default bound.
  std::optional<double> delta;
  double fd_step = 1e-5;
  double tolerance = 1e-6;
  /// complexity without model files.
  std::optional<int> num_parameters;
  std::optional<double> alpha_one_norm;
  double sampler_t_max = HighPeakTentSampler::kDefaultTMax;
  std::int64_t sampler_grid_size = static_cast<std::int64_t>(HighPeakTentSampler::kDefaultGridSize);

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// JSON (de)serialization; the echo in every output header re-parses to an
/// equal config. Throws ConfigError on unknown keys or bad values.
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);
/// Checks command names, grid sizes and value ranges.
void validate(const ExperimentConfig& cfg);

struct LandscapeRow {
  std::vector<double> coordinates;
  double f = 0.0;
  double grad_norm = 0.0;
};
std::vector<LandscapeRow> run_landscape(const ExperimentConfig& cfg);

struct GradCheckRow {
  int component = 0;
  double analytic = 0.0;
  double finite_difference = 0.0;
  double abs_diff = 0.0;
};
struct GradCheckReport {
  std::vector<GradCheckRow> rows;
  double max_abs_diff = 0.0;
  bool passed = false;
};
GradCheckReport run_grad_check(const ExperimentConfig& cfg);

struct EstimateRow {
  int component = 0;
  double estimate = 0.0;
  double analytic = 0.0;
  double standard_error = 0.0;
  std::int64_t shots_first = 0;
  std::int64_t shots_second = 0;
  std::int64_t preparations = 0;
};
struct EstimateReport {
  std::vector<EstimateRow> rows;
  std::int64_t total_preparations = 0;
};
EstimateReport run_estimate(const ExperimentConfig& cfg);

TrainResult run_train(const ExperimentConfig& cfg, const RecordSink& sink = {});

struct ComplexityRow {
  double epsilon = 0.0;
  int num_parameters = 0;
  double alpha_one_norm = 0.0;
  double ell = 0.0;
  double delta = 0.0;
  std::int64_t iterations = 0;
  /// Hoeffding shot counts at the derived per-term precisions.
  std::int64_t shots_first = 0;
  std::int64_t shots_second = 0;
  /// Per-term factor of the closed-form total.
  std::uint64_t shots_per_term = 0;
  std::uint64_t total = 0;
};
std::vector<ComplexityRow> run_complexity(const ExperimentConfig& cfg);

/// Runs cfg.command and writes its table to `out`. Returns the process exit
/// status: 0 success, 4 grad-check tolerance failure. Errors propagate as
/// exceptions.
int execute(const ExperimentConfig& cfg, std::ostream& out);

/// As execute(), writing to cfg.output_path (stdout when empty) and mapping
/// ConfigError to 2 and NumericalError to 3 with a message on stderr.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace qbm
