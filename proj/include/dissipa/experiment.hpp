// Copyright 2026 The dissipa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dissipa/lindblad.hpp"
#include "dissipa/lyapunov.hpp"
#include "dissipa/models.hpp"

namespace dissipa {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

enum class ModelKind { LambdaFull, LambdaEffective, TwoAtomFull, TwoAtomEffective };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);
bool is_lambda(ModelKind kind);

struct SweepAxis {
  std::string path;
  std::vector<double> values;
};

/// Experiment description read from flat `key = value` text:
///
///   model = lambda_full
///   model.gamma = 0.5           # dotted parameter paths
///   initial_state = g1          # label, mixture(g1, g2) or matrix
///   controls = on
///   t_final = 10
///   dt = 0.001
///   record_stride = 10
///   sweep.model.gamma = 0.5, 1, 2    # or start:stop:step
///
/// An explicit density matrix is given with `initial_state = matrix` plus
/// `initial_state.real` (and optionally `initial_state.imag`), rows separated
/// by ';' and entries by ','.
struct ExperimentConfig {
  ModelKind model = ModelKind::LambdaFull;
  LambdaParams lambda;
  TwoAtomParams two_atom;
  /// When set, gamma2 = gamma2_ratio * gamma1 for the two-atom models.
  std::optional<double> gamma2_ratio;
  double control_gain = 1.0;
  std::optional<double> control_cap;

  /// Empty means the model's default initial state.
  std::string initial_state;
  std::optional<ComplexMatrix> initial_matrix;

  bool controls_enabled = false;
  double t_final = 10.0;
  double dt = 1e-3;
  int record_stride = 10;
  std::vector<SweepAxis> sweep;
  std::filesystem::path output_dir = ".";

  static ExperimentConfig parse(std::string_view text);
  static ExperimentConfig load(const std::filesystem::path& file);

  /// Assigns a scalar by dotted path (e.g. "model.gamma1", "t_final").
  /// Throws ConfigError for paths that do not exist on the chosen model.
  void set(std::string_view path, double value);
  ExperimentConfig with(std::string_view path, double value) const;
  /// Same config with a different model kind and matching parameters.
  ExperimentConfig with_model(ModelKind kind) const;

  CatalogModel build() const;
  DensityMatrix initial_state_for(const CatalogModel& built) const;
  PropagationOptions propagation_options() const;

  /// Throws ConfigError when inconsistent.
  void validate() const;
};

/// Runs one trajectory (ignoring any sweep section).
TrajectoryRecord simulate(const ExperimentConfig& config);

/// Scientific notation with 17 significant digits.
std::string format_double(double x);

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record);
void write_trajectory_csv(const std::filesystem::path& file, const TrajectoryRecord& record);

/// Simulates and writes `trajectory.csv` into the config's output directory.
TrajectoryRecord run_simulate(const ExperimentConfig& config);

struct SweepCell {
  std::vector<std::size_t> indices;
  std::vector<double> values;
  double fidelity = 0.0;
  double max_vdot = 0.0;
  std::vector<double> max_abs_controls;
};

struct SweepResult {
  std::vector<SweepAxis> axes;
  /// Lexicographic over axis indices, last axis fastest.
  std::vector<SweepCell> cells;

  /// Cell with the largest fidelity (first one on ties).
  const SweepCell& best() const;
};

/// Evaluates every grid cell; `jobs` workers share the cells but the result
/// order does not depend on them.
SweepResult sweep(const ExperimentConfig& config, int jobs = 1);
void write_sweep_csv(std::ostream& os, const SweepResult& result);
/// Sweeps and writes `sweep.csv`.
SweepResult run_sweep(const ExperimentConfig& config, int jobs = 1);

/// Verifies the stationary-state conditions of the configured model.
StationarityReport verify(const ExperimentConfig& config);
void print_verify_table(std::ostream& os, const StationarityReport& report);
void write_verify_csv(std::ostream& os, const StationarityReport& report);
/// Prints the table to `os` and writes `verify.csv` into the output directory.
StationarityReport run_verify(const ExperimentConfig& config, std::ostream& os);

struct NoiseRow {
  double eta = 0.0;
  double gamma = 0.0;
  double fidelity = 0.0;
};

/// Final fidelity over the eta x gamma grid. Gamma values come from a sweep
/// axis on the model's decay rate (model.gamma / model.gamma1) or, without
/// one, from the config itself.
std::vector<NoiseRow> noise_scan(const ExperimentConfig& config,
                                 const std::vector<double>& etas, int jobs = 1);
void write_noise_csv(std::ostream& os, const std::vector<NoiseRow>& rows);
std::vector<NoiseRow> run_noise_scan(const ExperimentConfig& config,
                                     const std::vector<double>& etas, int jobs = 1);

struct ZenoComparison {
  TrajectoryRecord full;
  TrajectoryRecord effective;
  double max_abs_delta_ps = 0.0;
};

/// Propagates the full and the effective picture of the configured system
/// from the same labeled initial state and compares the target population.
ZenoComparison compare_zeno(const ExperimentConfig& config);
ZenoComparison run_compare_zeno(const ExperimentConfig& config);

/// Parses "0.1,0.2" or "start:stop:step" lists.
std::vector<double> parse_value_list(std::string_view text);

}  // namespace dissipa
