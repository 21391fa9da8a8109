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

#include "qbm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <variant>

#include <json.hpp>

namespace qbm {

namespace {

using nlohmann::json;

constexpr const char* kCommands[] = {"landscape", "grad-check", "estimate", "train", "complexity"};
constexpr std::int64_t kMaxGridPoints = 1'000'000;

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Fixed-column table written as CSV or JSON lines. Header and summary records
// become `# key: {json}` comment lines in CSV and typed objects in JSON lines.
class TableWriter {
 public:
  using Cell = std::variant<std::int64_t, std::uint64_t, double>;

  TableWriter(std::ostream& out, OutputFormat format, std::vector<std::string> columns)
      : out_(out), format_(format), columns_(std::move(columns)) {}

  void meta(const std::string& type, const json& body) {
    if (format_ == OutputFormat::kCsv) {
      out_ << "# " << type << ": " << body.dump() << '\n';
    } else {
      const json rec = {{"type", type}, {type, body}};
      out_ << rec.dump() << '\n';
    }
  }

  void begin_rows() {
    if (format_ != OutputFormat::kCsv) return;
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
  }

  void row(const std::vector<Cell>& cells) {
    if (cells.size() != columns_.size()) throw std::logic_error("row width mismatch");
    if (format_ == OutputFormat::kCsv) {
      for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << render(cells[i]);
    } else {
      out_ << "{\"type\":\"row\"";
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out_ << ",\"" << columns_[i] << "\":" << render_json(cells[i]);
      }
      out_ << '}';
    }
    out_ << '\n';
  }

 private:
  static std::string render(const Cell& c) {
    if (auto* d = std::get_if<double>(&c)) return fmt_double(*d);
    if (auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::to_string(std::get<std::uint64_t>(c));
  }
  static std::string render_json(const Cell& c) {
    if (auto* d = std::get_if<double>(&c); d && !std::isfinite(*d)) return "null";
    return render(c);
  }

  std::ostream& out_;
  OutputFormat format_;
  std::vector<std::string> columns_;
};

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["hamiltonian"] = cfg.hamiltonian_path;
  j["ansatz"] = cfg.ansatz_path;
  if (cfg.theta) j["theta"] = *cfg.theta;
  json grid = json::array();
  for (const auto& a : cfg.grid) {
    grid.push_back({{"parameter", a.parameter}, {"lo", a.lo}, {"hi", a.hi}, {"points", a.points}});
  }
  j["grid"] = grid;
  j["epsilon"] = cfg.epsilon;
  j["epsilons"] = cfg.epsilons;
  j["seed"] = cfg.seed;
  switch (cfg.shots.kind) {
    case ShotSpec::Kind::kAuto: j["shots"] = "auto"; break;
    case ShotSpec::Kind::kExact: j["shots"] = "exact"; break;
    case ShotSpec::Kind::kFixed: j["shots"] = cfg.shots.count; break;
  }
  j["out"] = cfg.output_path;
  j["format"] = cfg.format == OutputFormat::kCsv ? "csv" : "jsonl";
  if (cfg.max_iterations) j["max_iters"] = *cfg.max_iterations;
  if (cfg.delta) {
    j["delta"] = *cfg.delta;
  } else {
    j["delta"] = "auto";
  }
  j["fd_step"] = cfg.fd_step;
  j["tolerance"] = cfg.tolerance;
  if (cfg.num_parameters) j["num_params"] = *cfg.num_parameters;
  if (cfg.alpha_one_norm) j["alpha_norm"] = *cfg.alpha_one_norm;
  j["sampler_t_max"] = cfg.sampler_t_max;
  j["sampler_grid_size"] = cfg.sampler_grid_size;
  return j;
}

template <class T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

struct Model {
  WeightedPauliSum h;
  Ansatz ansatz;
};

Model load_model(const ExperimentConfig& cfg) {
  if (cfg.hamiltonian_path.empty()) throw ConfigError(cfg.command + ": --hamiltonian is required");
  if (cfg.ansatz_path.empty()) throw ConfigError(cfg.command + ": --ansatz is required");
  Model m{load_hamiltonian(cfg.hamiltonian_path), load_ansatz(cfg.ansatz_path)};
  if (m.h.num_qubits() != m.ansatz.num_qubits()) {
    throw DimensionError("Hamiltonian acts on " + std::to_string(m.h.num_qubits()) +
                         " qubits, ansatz on " + std::to_string(m.ansatz.num_qubits()));
  }
  return m;
}

RealVector theta_or(const ExperimentConfig& cfg, int num, bool required) {
  if (!cfg.theta) {
    if (required) throw ConfigError(cfg.command + ": --theta is required");
    return RealVector::Zero(num);
  }
  if (static_cast<int>(cfg.theta->size()) != num) {
    throw DimensionError("theta has " + std::to_string(cfg.theta->size()) +
                         " entries, ansatz has " + std::to_string(num) + " generators");
  }
  return Eigen::Map<const RealVector>(cfg.theta->data(), num);
}

HighPeakTentSampler build_sampler(const ExperimentConfig& cfg) {
  return HighPeakTentSampler::build(cfg.sampler_t_max,
                                    static_cast<std::size_t>(cfg.sampler_grid_size));
}

json hyper_json(const Hyperparameters& hp) {
  return {{"ell", hp.ell},           {"eta", hp.eta},
          {"iterations", hp.iterations}, {"epsilon1", hp.epsilon1},
          {"epsilon2", hp.epsilon2}, {"delta1", hp.delta1},
          {"delta2", hp.delta2},     {"shots_first", hp.shots_first},
          {"shots_second", hp.shots_second}, {"delta_bound", hp.delta_bound}};
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(); }

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::vector<std::string> kKnown = {
      "command", "hamiltonian", "ansatz",    "theta",      "grid",       "epsilon",
      "epsilons", "seed",       "shots",     "out",        "format",     "max_iters",
      "delta",   "fd_step",     "tolerance", "num_params", "alpha_norm", "sampler_t_max",
      "sampler_grid_size"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  if (j.contains("command")) cfg.command = get_field<std::string>(j, "command");
  if (j.contains("hamiltonian")) cfg.hamiltonian_path = get_field<std::string>(j, "hamiltonian");
  if (j.contains("ansatz")) cfg.ansatz_path = get_field<std::string>(j, "ansatz");
  if (j.contains("theta")) cfg.theta = get_field<std::vector<double>>(j, "theta");
  if (j.contains("grid")) {
    for (const auto& a : j.at("grid")) {
      cfg.grid.push_back({get_field<int>(a, "parameter"), get_field<double>(a, "lo"),
                          get_field<double>(a, "hi"), get_field<int>(a, "points")});
    }
  }
  if (j.contains("epsilon")) cfg.epsilon = get_field<double>(j, "epsilon");
  if (j.contains("epsilons")) cfg.epsilons = get_field<std::vector<double>>(j, "epsilons");
  if (j.contains("seed")) cfg.seed = get_field<std::uint64_t>(j, "seed");
  if (j.contains("shots")) {
    const auto& s = j.at("shots");
    if (s.is_string() && s == "auto") {
      cfg.shots = {ShotSpec::Kind::kAuto, 0};
    } else if (s.is_string() && s == "exact") {
      cfg.shots = {ShotSpec::Kind::kExact, 0};
    } else if (s.is_number_integer()) {
      cfg.shots = {ShotSpec::Kind::kFixed, s.get<std::int64_t>()};
    } else {
      throw ConfigError("config field 'shots' must be \"auto\", \"exact\" or an integer");
    }
  }
  if (j.contains("out")) cfg.output_path = get_field<std::string>(j, "out");
  if (j.contains("format")) {
    const auto f = get_field<std::string>(j, "format");
    if (f == "csv") {
      cfg.format = OutputFormat::kCsv;
    } else if (f == "jsonl") {
      cfg.format = OutputFormat::kJsonLines;
    } else {
      throw ConfigError("config field 'format' must be csv or jsonl");
    }
  }
  if (j.contains("max_iters")) cfg.max_iterations = get_field<std::int64_t>(j, "max_iters");
  if (j.contains("delta")) {
    const auto& d = j.at("delta");
    if (d.is_string() && d == "auto") {
      cfg.delta.reset();
    } else if (d.is_number()) {
      cfg.delta = d.get<double>();
    } else {
      throw ConfigError("config field 'delta' must be \"auto\" or a number");
    }
  }
  if (j.contains("fd_step")) cfg.fd_step = get_field<double>(j, "fd_step");
  if (j.contains("tolerance")) cfg.tolerance = get_field<double>(j, "tolerance");
  if (j.contains("num_params")) cfg.num_parameters = get_field<int>(j, "num_params");
  if (j.contains("alpha_norm")) cfg.alpha_one_norm = get_field<double>(j, "alpha_norm");
  if (j.contains("sampler_t_max")) cfg.sampler_t_max = get_field<double>(j, "sampler_t_max");
  if (j.contains("sampler_grid_size")) {
    cfg.sampler_grid_size = get_field<std::int64_t>(j, "sampler_grid_size");
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (std::find(std::begin(kCommands), std::end(kCommands), cfg.command) == std::end(kCommands)) {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  if (cfg.shots.kind == ShotSpec::Kind::kFixed && cfg.shots.count < 1) {
    throw ConfigError("shot count must be >= 1");
  }
  if (cfg.max_iterations && *cfg.max_iterations < 1) throw ConfigError("max-iters must be >= 1");
  if (cfg.delta && !(*cfg.delta > 0.0)) throw ConfigError("delta must be > 0");
  if (!(cfg.fd_step > 0.0)) throw ConfigError("fd-step must be > 0");
  if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  std::int64_t total = 1;
  for (const auto& a : cfg.grid) {
    if (a.points < 2) throw ConfigError("grid axes need at least 2 points");
    if (!(a.hi > a.lo)) throw ConfigError("grid axis needs hi > lo");
    total *= a.points;
    if (total > kMaxGridPoints) throw ConfigError("grid exceeds 1e6 points");
  }
}

std::vector<LandscapeRow> run_landscape(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.grid.empty() || cfg.grid.size() > 2) {
    throw ConfigError("landscape needs a 1- or 2-dimensional grid");
  }
  const Model model = load_model(cfg);
  const int num = model.ansatz.size();
  for (const auto& a : cfg.grid) {
    if (a.parameter < 0 || a.parameter >= num) throw ConfigError("grid parameter out of range");
  }
  if (cfg.grid.size() == 2 && cfg.grid[0].parameter == cfg.grid[1].parameter) {
    throw ConfigError("grid axes must scan distinct parameters");
  }
  const RealVector base = theta_or(cfg, num, false);
  const ComplexMatrix h = dense_matrix(model.h);

  auto node = [](const GridAxis& a, int i) {
    return a.lo + (a.hi - a.lo) * static_cast<double>(i) / static_cast<double>(a.points - 1);
  };
  const GridAxis& ax0 = cfg.grid[0];
  const GridAxis ax1 = cfg.grid.size() == 2 ? cfg.grid[1] : GridAxis{-1, 0.0, 1.0, 1};

  std::vector<LandscapeRow> rows;
  for (int i = 0; i < ax0.points; ++i) {
    for (int k = 0; k < ax1.points; ++k) {
      RealVector theta = base;
      LandscapeRow row;
      theta(ax0.parameter) = node(ax0, i);
      row.coordinates.push_back(theta(ax0.parameter));
      if (ax1.parameter >= 0) {
        theta(ax1.parameter) = node(ax1, k);
        row.coordinates.push_back(theta(ax1.parameter));
      }
      const ThermalState state = thermal_state(model.ansatz, theta);
      row.f = objective(h, state);
      row.grad_norm = analytic_gradient(h, model.ansatz, state).norm();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

GradCheckReport run_grad_check(const ExperimentConfig& cfg) {
  validate(cfg);
  const Model model = load_model(cfg);
  const int num = model.ansatz.size();
  const RealVector theta = theta_or(cfg, num, true);
  const ComplexMatrix h = dense_matrix(model.h);
  const RealVector grad = analytic_gradient(h, model.ansatz, thermal_state(model.ansatz, theta));

  GradCheckReport report;
  for (int j = 0; j < num; ++j) {
    RealVector plus = theta, minus = theta;
    plus(j) += cfg.fd_step;
    minus(j) -= cfg.fd_step;
    const double fd = (objective(h, thermal_state(model.ansatz, plus)) -
                       objective(h, thermal_state(model.ansatz, minus))) /
                      (2.0 * cfg.fd_step);
    const double diff = std::abs(grad(j) - fd);
    report.rows.push_back({j, grad(j), fd, diff});
    report.max_abs_diff = std::max(report.max_abs_diff, diff);
  }
  report.passed = report.max_abs_diff <= cfg.tolerance;
  return report;
}

EstimateReport run_estimate(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.shots.kind == ShotSpec::Kind::kExact) {
    throw ConfigError("estimate needs a shot budget (auto or a count)");
  }
  const Model model = load_model(cfg);
  const int num = model.ansatz.size();
  const RealVector theta = theta_or(cfg, num, false);
  const ThermalState state = thermal_state(model.ansatz, theta);

  EstimatorConfig est;
  est.seed = cfg.seed;
  if (cfg.shots.kind == ShotSpec::Kind::kFixed) {
    est.shots_first = est.shots_second = cfg.shots.count;
  } else {
    // Per-term precisions the trainer would use at this epsilon.
    const Hyperparameters hp = derive_hyperparameters(model.h, model.ansatz, cfg.epsilon, 1.0);
    est.epsilon1 = hp.epsilon1;
    est.epsilon2 = hp.epsilon2;
    est.delta1 = hp.delta1;
    est.delta2 = hp.delta2;
  }
  const HighPeakTentSampler sampler = build_sampler(cfg);
  const GradientEstimate g = qbge(model.h, model.ansatz, state, est, sampler, 0);
  const RealVector truth = analytic_gradient(model.h, model.ansatz, state);

  EstimateReport report;
  const RealVector se = g.standard_error();
  for (int j = 0; j < num; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    report.rows.push_back({j, g.components(j), truth(j), se(j), g.shots_first[uj],
                           g.shots_second[uj], g.shots_first[uj] + 2 * g.shots_second[uj]});
  }
  report.total_preparations = g.preparations;
  return report;
}

TrainResult run_train(const ExperimentConfig& cfg, const RecordSink& sink) {
  validate(cfg);
  const Model model = load_model(cfg);
  TrainConfig tc;
  tc.epsilon = cfg.epsilon;
  tc.delta_bound = cfg.delta;
  tc.max_iterations = cfg.max_iterations;
  tc.seed = cfg.seed;
  switch (cfg.shots.kind) {
    case ShotSpec::Kind::kAuto: tc.shot_mode = ShotMode::hoeffding(); break;
    case ShotSpec::Kind::kFixed: tc.shot_mode = ShotMode::fixed(cfg.shots.count); break;
    case ShotSpec::Kind::kExact: tc.shot_mode = ShotMode::analytic(); break;
  }
  if (cfg.theta) tc.theta0 = theta_or(cfg, model.ansatz.size(), true);
  tc.sampler_t_max = cfg.sampler_t_max;
  tc.sampler_grid_size = static_cast<std::size_t>(cfg.sampler_grid_size);
  return qbm_gse(model.h, model.ansatz, tc, sink);
}

std::vector<ComplexityRow> run_complexity(const ExperimentConfig& cfg) {
  validate(cfg);
  int num = 0;
  double alpha = 0.0;
  std::optional<double> delta = cfg.delta;
  if (!cfg.hamiltonian_path.empty() || !cfg.ansatz_path.empty()) {
    const Model model = load_model(cfg);
    num = model.ansatz.size();
    alpha = one_norm(model.h);
    if (!delta) delta = default_delta(model.h, model.ansatz, theta_or(cfg, num, false));
  } else {
    if (!cfg.num_parameters || !cfg.alpha_one_norm) {
      throw ConfigError("complexity needs model files or both --num-params and --alpha-norm");
    }
    num = *cfg.num_parameters;
    alpha = *cfg.alpha_one_norm;
    if (!delta) throw ConfigError("complexity without model files needs an explicit --delta");
  }
  std::vector<double> epsilons = cfg.epsilons.empty() ? std::vector<double>{cfg.epsilon}
                                                      : cfg.epsilons;
  std::vector<ComplexityRow> rows;
  for (double eps : epsilons) {
    const Hyperparameters hp = derive_hyperparameters(num, alpha, eps, *delta);
    const SampleComplexity sc = sample_complexity(eps, num, alpha, hp.ell, *delta);
    rows.push_back({eps, num, alpha, hp.ell, *delta, hp.iterations, hp.shots_first,
                    hp.shots_second, sc.shots_per_term, sc.total});
  }
  return rows;
}

int execute(const ExperimentConfig& cfg, std::ostream& out) {
  validate(cfg);
  const json echo = config_json(cfg);

  if (cfg.command == "landscape") {
    const auto rows = run_landscape(cfg);
    std::vector<std::string> cols;
    for (const auto& a : cfg.grid) cols.push_back("theta_" + std::to_string(a.parameter));
    cols.insert(cols.end(), {"f", "grad_norm"});
    TableWriter w(out, cfg.format, cols);
    w.meta("config", echo);
    w.begin_rows();
    for (const auto& r : rows) {
      std::vector<TableWriter::Cell> cells(r.coordinates.begin(), r.coordinates.end());
      cells.emplace_back(r.f);
      cells.emplace_back(r.grad_norm);
      w.row(cells);
    }
    return 0;
  }

  if (cfg.command == "grad-check") {
    const auto report = run_grad_check(cfg);
    TableWriter w(out, cfg.format, {"component", "analytic", "finite_difference", "abs_diff"});
    w.meta("config", echo);
    w.begin_rows();
    for (const auto& r : report.rows) {
      w.row({std::int64_t{r.component}, r.analytic, r.finite_difference, r.abs_diff});
    }
    w.meta("summary", {{"max_abs_diff", report.max_abs_diff},
                       {"tolerance", cfg.tolerance},
                       {"passed", report.passed}});
    return report.passed ? 0 : 4;
  }

  if (cfg.command == "estimate") {
    const auto report = run_estimate(cfg);
    TableWriter w(out, cfg.format,
                  {"component", "estimate", "analytic", "standard_error", "shots_first",
                   "shots_second", "preparations"});
    w.meta("config", echo);
    w.begin_rows();
    for (const auto& r : report.rows) {
      w.row({std::int64_t{r.component}, r.estimate, r.analytic, r.standard_error, r.shots_first,
             r.shots_second, r.preparations});
    }
    w.meta("summary", {{"total_preparations", report.total_preparations}});
    return 0;
  }

  if (cfg.command == "train") {
    const Model model = load_model(cfg);
    const int num = model.ansatz.size();
    std::vector<std::string> cols = {"iteration", "f_analytic", "grad_analytic_norm",
                                     "preparations_used"};
    for (int j = 0; j < num; ++j) cols.push_back("theta_" + std::to_string(j));
    for (int j = 0; j < num; ++j) cols.push_back("grad_estimate_" + std::to_string(j));
    TableWriter w(out, cfg.format, cols);
    w.meta("config", echo);
    // The trainer derives the same values from the same inputs; computing them
    // here lets the run header precede the streamed rows.
    const RealVector theta0 =
        cfg.theta ? theta_or(cfg, num, true) : initial_theta(num, cfg.seed);
    const bool defaulted = !cfg.delta.has_value();
    const double delta = defaulted ? default_delta(model.h, model.ansatz, theta0) : *cfg.delta;
    const Hyperparameters planned = derive_hyperparameters(model.h, model.ansatz, cfg.epsilon, delta);
    const std::int64_t planned_iterations =
        cfg.max_iterations ? std::min(*cfg.max_iterations, planned.iterations) : planned.iterations;
    w.meta("header", {{"hyperparameters", hyper_json(planned)},
                      {"delta_defaulted", defaulted},
                      {"iterations_planned", planned_iterations},
                      {"theta0", std::vector<double>(theta0.begin(), theta0.end())}});
    w.begin_rows();
    const TrainResult result = run_train(cfg, [&](const TrainRecord& rec) {
      std::vector<TableWriter::Cell> cells = {rec.iteration, rec.f_analytic,
                                              rec.grad_analytic_norm, rec.preparations_used};
      for (int j = 0; j < num; ++j) cells.emplace_back(rec.theta(j));
      for (int j = 0; j < num; ++j) cells.emplace_back(rec.grad_estimate(j));
      w.row(cells);
    });
    const auto& hp = result.hyper;
    if (result.iterations_run < hp.iterations) {
      std::cerr << "warning: running " << result.iterations_run << " of the " << hp.iterations
                << " iterations the convergence guarantee requires; the guarantee does not apply\n";
    }
    json summary = {{"hyperparameters", hyper_json(hp)},
                    {"delta_defaulted", result.delta_defaulted},
                    {"iterations_run", result.iterations_run},
                    {"guarantee_applies", result.iterations_run >= hp.iterations},
                    {"theta0", std::vector<double>(result.theta0.begin(), result.theta0.end())},
                    {"final_theta",
                     std::vector<double>(result.final_theta.begin(), result.final_theta.end())},
                    {"energy_at_final_theta", result.final_energy},
                    {"energy_at_final_theta_estimate", result.final_energy_estimate},
                    {"final_measurement_shots", result.final_measurement_shots},
                    {"energy_min_over_trajectory", result.min_trajectory_energy},
                    {"min_grad_norm", result.min_grad_norm},
                    {"total_preparations", result.total_preparations}};
    w.meta("summary", summary);
    return 0;
  }

  // complexity
  const auto rows = run_complexity(cfg);
  TableWriter w(out, cfg.format,
                {"epsilon", "num_parameters", "alpha_one_norm", "ell", "delta", "iterations",
                 "shots_first", "shots_second", "shots_per_term", "total"});
  w.meta("config", echo);
  w.begin_rows();
  for (const auto& r : rows) {
    w.row({r.epsilon, std::int64_t{r.num_parameters}, r.alpha_one_norm, r.ell, r.delta,
           r.iterations, r.shots_first, r.shots_second, r.shots_per_term, r.total});
  }
  return 0;
}

int run_experiment(const ExperimentConfig& cfg) {
  try {
    validate(cfg);
    if (cfg.output_path.empty()) return execute(cfg, std::cout);
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file " + cfg.output_path);
    const int status = execute(cfg, file);
    file.flush();
    if (!file) throw ConfigError("failed writing " + cfg.output_path);
    return status;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical fault: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace qbm
