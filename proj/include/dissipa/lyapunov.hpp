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
#include <string>
#include <vector>

#include "dissipa/lindblad.hpp"

namespace dissipa {

/// V = Re Tr(rho rho_s).
double lyapunov_v(const DensityMatrix& rho, const DensityMatrix& rho_s);

/// f_n = gain * Tr[(-i[H_n, rho]) rho_s], optionally clamped to +-cap.
///
/// With gain 1 and no cap each control adds f_n^2 to dV/dt, so the fields
/// never slow the approach to the target and vanish once rho = rho_s.
class LyapunovController final : public FeedbackLaw {
 public:
  explicit LyapunovController(const OpenSystemModel& model);

  std::size_t size() const override { return responses_.size(); }
  void amplitudes(const ComplexMatrix& rho, std::span<double> out) const override;
  std::vector<double> amplitudes(const ComplexMatrix& rho) const;

 private:
  ComplexMatrix target_;
  /// [rho_s, H_n]; f_n = gain * Im Tr(rho [rho_s, H_n]).
  std::vector<ComplexMatrix> responses_;
  double gain_;
  std::optional<double> cap_;
};

/// Throws InvalidInput when the model has no control Hamiltonians.
std::vector<double> control_amplitudes(const OpenSystemModel& model,
                                       const DensityMatrix& rho);

struct SpeedReport {
  double v = 0.0;
  /// Tr[(-i[H(t), rho] + N rho + L rho) rho_s].
  double vdot_free = 0.0;
  double vdot_controlled = 0.0;
  /// sum_n f_n Tr[(-i[H_n, rho]) rho_s]; zero when controls are off.
  double control_contribution = 0.0;
  std::vector<double> controls;
};

SpeedReport evolution_speed(const OpenSystemModel& model, double t,
                            const DensityMatrix& rho, bool controls_on);

/// sum_k rate_k <E_k|rho|E_k>: the speed of a model whose only dissipation is
/// sqrt(rate_k)|S><E_k| and whose Hamiltonian annihilates |S>. Cross-check
/// for evolution_speed, not used on the propagation path.
double effective_speed(std::span<const double> rates,
                       const std::vector<KetVector>& excited,
                       const DensityMatrix& rho);

struct StationarityReport {
  static constexpr double kThreshold = 1e-8;

  /// ||H|S>|| over the static part and every rotating operator and adjoint.
  double hamiltonian_residual = 0.0;
  bool h_annihilates_target = false;
  /// ||L_k|S>|| per Lindblad operator.
  std::vector<double> lindblad_residuals;
  bool lindblad_annihilates_target = false;
  /// ||L_k^dag|S>|| per Lindblad operator.
  std::vector<double> lindblad_feed_norms;
  bool target_reachable = false;
  /// ||H|M>|| per complement vector.
  std::vector<double> complement_drive_norms;
  bool complement_driven = false;

  bool all_pass() const {
    return h_annihilates_target && lindblad_annihilates_target && target_reachable &&
           complement_driven;
  }
};

/// Checks H|S> = 0, L_k|S> = 0, some L_k^dag|S> != 0 and H|M> != 0 for
/// every complement vector |M>. Rejects target/complement sets that are not
/// orthonormal within 1e-8.
StationarityReport verify_stationarity(const OpenSystemModel& model,
                                       const KetVector& target,
                                       const std::vector<KetVector>& complement_basis);

}  // namespace dissipa
