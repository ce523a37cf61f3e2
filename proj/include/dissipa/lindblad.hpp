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

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dissipa/operator_algebra.hpp"

namespace dissipa {

/// Hermitian, unit-trace, positive semidefinite operator. Validated on
/// construction.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kPositivityTolerance = 1e-8;

  explicit DensityMatrix(ComplexMatrix matrix);

  /// |psi><psi| / <psi|psi>. Zero vectors are rejected.
  static DensityMatrix pure(const KetVector& psi);
  /// Uniform mixture of the (normalized) kets.
  static DensityMatrix mixture(const std::vector<KetVector>& kets);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

/// A e^{i omega t} + A^dag e^{-i omega t}.
struct RotatingTerm {
  ComplexMatrix op;
  double omega = 0.0;
};

class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(Eigen::Index dim);

  /// Rejects non-Hermitian terms and dimension mismatches.
  void add_static(ComplexMatrix term);
  void add_rotating(ComplexMatrix op, double omega);

  ComplexMatrix evaluate(double t) const;

  Eigen::Index dim() const { return dim_; }
  bool is_time_independent() const;
  const std::vector<ComplexMatrix>& static_terms() const { return static_terms_; }
  const std::vector<RotatingTerm>& rotating_terms() const { return rotating_terms_; }
  /// Sum of the static terms.
  const ComplexMatrix& static_sum() const { return static_sum_; }

 private:
  Eigen::Index dim_;
  std::vector<ComplexMatrix> static_terms_;
  std::vector<RotatingTerm> rotating_terms_;
  ComplexMatrix static_sum_;
};

/// Averaged white amplitude noise along h_s with intensity eta.
struct NoiseChannel {
  NoiseChannel(ComplexMatrix h_s, double eta);
  ComplexMatrix h_s;
  double eta;
};

struct LabeledProjector {
  std::string label;
  ComplexMatrix projector;
};

/// Everything the master equation and the feedback law need. Rates are
/// folded into the Lindblad operators.
struct OpenSystemModel {
  OpenSystemModel(HamiltonianSpec hamiltonian, DensityMatrix target);

  HamiltonianSpec hamiltonian;
  std::vector<ComplexMatrix> lindblad_ops;
  std::vector<NoiseChannel> noise;
  DensityMatrix target;
  std::vector<ComplexMatrix> controls;
  double control_gain = 1.0;
  std::optional<double> control_cap;
  /// Populations recorded along trajectories, in this order.
  std::vector<LabeledProjector> observables;

  Eigen::Index dim() const { return hamiltonian.dim(); }
  /// Throws InvalidInput when any member is inconsistent.
  void validate() const;
};

/// sum_k L rho L^dag - (L^dag L rho + rho L^dag L)/2.
ComplexMatrix dissipator(const std::vector<ComplexMatrix>& lindblad_ops,
                         const ComplexMatrix& rho);
ComplexMatrix dissipator(const std::vector<ComplexMatrix>& lindblad_ops,
                         const DensityMatrix& rho);

/// sum over channels of -(eta^2/2) [h_s, [h_s, rho]].
ComplexMatrix noise_superoperator(const std::vector<NoiseChannel>& channels,
                                  const ComplexMatrix& rho);
ComplexMatrix noise_superoperator(const std::vector<NoiseChannel>& channels,
                                  const DensityMatrix& rho);

/// -i[H(t) + sum_n f_n H_n, rho] + N rho + L rho, assembled term by term.
ComplexMatrix master_rhs(const OpenSystemModel& model, double t,
                         const ComplexMatrix& rho,
                         std::span<const double> control_values);
ComplexMatrix master_rhs(const OpenSystemModel& model, double t,
                         const DensityMatrix& rho,
                         std::span<const double> control_values);

/// Precompiled form of the master equation used by the integrator:
///   drho = -i (G rho - rho G^dag) + sum_j J_j rho J_j^dag
/// with G = H(t) + sum f_n H_n - i (sum L^dag L + sum eta^2 h_s^2) / 2.
/// G and J_j are stored on their sparsity patterns. `rho` must be Hermitian,
/// which lets G rho - rho G^dag be formed from a single product.
class MasterEquation {
 public:
  explicit MasterEquation(const OpenSystemModel& model);

  std::size_t num_controls() const { return num_controls_; }

  /// Writes the right-hand side into `out`. `out` must not alias `rho`.
  void rhs(double t, const ComplexMatrix& rho,
           std::span<const double> control_values, ComplexMatrix& out) const;

 private:
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Complex value;
  };
  // One structural nonzero of G with its constant, rotating and control
  // coefficients.
  struct GeneratorEntry {
    Eigen::Index row;
    Eigen::Index col;
    Complex constant;
    std::vector<Complex> forward;   // coefficient of e^{+i omega t}
    std::vector<Complex> backward;  // coefficient of e^{-i omega t}
    std::vector<Complex> control;
  };

  Eigen::Index dim_;
  std::size_t num_controls_;
  std::vector<double> omegas_;
  std::vector<GeneratorEntry> generator_;
  std::vector<std::vector<Entry>> jumps_;
  mutable std::vector<Complex> phases_;
  mutable ComplexMatrix product_;
};

/// State-feedback law evaluated at every integrator stage.
class FeedbackLaw {
 public:
  virtual ~FeedbackLaw() = default;
  virtual std::size_t size() const = 0;
  virtual void amplitudes(const ComplexMatrix& rho, std::span<double> out) const = 0;
};

/// Raised when the integrated state stops being a density matrix.
class PropagationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PropagationOptions {
  double t_final = 1.0;
  double dt = 1e-3;
  int record_stride = 1;
  /// Recorded states with a smaller eigenvalue abort the run.
  double positivity_floor = -1e-6;
};

struct TrajectoryRecord {
  std::vector<double> times;
  /// Tr(rho rho_s).
  std::vector<double> v;
  /// Tr(drho/dt rho_s) including the feedback fields.
  std::vector<double> vdot;
  /// Same with all control amplitudes set to zero.
  std::vector<double> vdot_free;
  /// One row of f_n per record.
  std::vector<std::vector<double>> controls;
  std::vector<std::string> population_labels;
  /// One row per record, columns follow population_labels.
  std::vector<std::vector<double>> populations;
  std::vector<double> min_eigenvalues;
  /// Largest |Tr(rho) - 1| removed by renormalization over all steps.
  double max_renormalization = 0.0;
  ComplexMatrix final_state;

  std::size_t size() const { return times.size(); }
  /// Column of `populations` for `label`; throws InvalidInput when absent.
  std::vector<double> population(const std::string& label) const;
};

/// Fixed-step RK4 propagation. When `controller` is supplied its amplitudes
/// are recomputed from the stage state at every RK stage. After each step
/// rho is re-Hermitized and renormalized to unit trace. Records are taken at
/// t = 0, every `record_stride` steps, and at the final step.
TrajectoryRecord propagate(const OpenSystemModel& model, const DensityMatrix& rho0,
                           const PropagationOptions& options,
                           const FeedbackLaw* controller = nullptr);

}  // namespace dissipa
