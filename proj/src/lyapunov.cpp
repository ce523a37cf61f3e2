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

#include "dissipa/lyapunov.hpp"

#include <algorithm>
#include <cmath>

namespace dissipa {

double lyapunov_v(const DensityMatrix& rho, const DensityMatrix& rho_s) {
  if (rho.dim() != rho_s.dim()) throw InvalidInput("lyapunov_v: dimension mismatch");
  return trace_of_product(rho.matrix(), rho_s.matrix()).real();
}

LyapunovController::LyapunovController(const OpenSystemModel& model)
    : target_(model.target.matrix()), gain_(model.control_gain), cap_(model.control_cap) {
  for (const auto& h : model.controls) responses_.push_back(commutator(target_, h));
}

void LyapunovController::amplitudes(const ComplexMatrix& rho, std::span<double> out) const {
  if (rho.rows() != target_.rows()) throw InvalidInput("LyapunovController: dimension mismatch");
  // Tr[(-i[H, rho]) rho_s] = -i Tr(rho [rho_s, H]); the trace is imaginary.
  for (std::size_t n = 0; n < responses_.size(); ++n) {
    double f = gain_ * trace_of_product(rho, responses_[n]).imag();
    if (cap_) f = std::clamp(f, -*cap_, *cap_);
    out[n] = f;
  }
}

std::vector<double> LyapunovController::amplitudes(const ComplexMatrix& rho) const {
  std::vector<double> out(responses_.size(), 0.0);
  amplitudes(rho, out);
  return out;
}

std::vector<double> control_amplitudes(const OpenSystemModel& model,
                                       const DensityMatrix& rho) {
  if (model.controls.empty()) throw InvalidInput("control_amplitudes: model has no controls");
  return LyapunovController(model).amplitudes(rho.matrix());
}

SpeedReport evolution_speed(const OpenSystemModel& model, double t,
                            const DensityMatrix& rho, bool controls_on) {
  if (rho.dim() != model.dim()) throw InvalidInput("evolution_speed: dimension mismatch");
  const ComplexMatrix& target = model.target.matrix();
  SpeedReport report;
  report.v = lyapunov_v(rho, model.target);

  const std::vector<double> zeros(model.controls.size(), 0.0);
  report.vdot_free =
      trace_of_product(master_rhs(model, t, rho, zeros), target).real();

  if (controls_on && !model.controls.empty()) {
    report.controls = control_amplitudes(model, rho);
    const Complex minus_i{0.0, -1.0};
    for (std::size_t n = 0; n < model.controls.size(); ++n) {
      const double response =
          trace_of_product(minus_i * commutator(model.controls[n], rho.matrix()), target).real();
      report.control_contribution += report.controls[n] * response;
    }
  }
  report.vdot_controlled = report.vdot_free + report.control_contribution;
  return report;
}

double effective_speed(std::span<const double> rates, const std::vector<KetVector>& excited,
                       const DensityMatrix& rho) {
  if (rates.size() != excited.size()) throw InvalidInput("effective_speed: rate/state count mismatch");
  double speed = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    if (excited[k].size() != rho.dim()) throw InvalidInput("effective_speed: dimension mismatch");
    speed += rates[k] * (excited[k].adjoint() * rho.matrix() * excited[k])(0, 0).real();
  }
  return speed;
}

namespace {

void require_orthonormal(const std::vector<KetVector>& kets, Eigen::Index dim) {
  constexpr double tol = 1e-8;
  for (std::size_t i = 0; i < kets.size(); ++i) {
    if (kets[i].size() != dim) throw InvalidInput("verify_stationarity: dimension mismatch");
    for (std::size_t j = i; j < kets.size(); ++j) {
      const Complex overlap = kets[i].dot(kets[j]);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > tol) {
        throw InvalidInput("verify_stationarity: target and complement are not orthonormal");
      }
    }
  }
}

// Norm of the largest contribution H(t)|psi> can have: static part plus
// every rotating operator and its adjoint.
double drive_norm(const HamiltonianSpec& h, const KetVector& psi) {
  double sq = (h.static_sum() * psi).squaredNorm();
  for (const auto& term : h.rotating_terms()) {
    sq += (term.op * psi).squaredNorm() + (term.op.adjoint() * psi).squaredNorm();
  }
  return std::sqrt(sq);
}

}  // namespace

StationarityReport verify_stationarity(const OpenSystemModel& model, const KetVector& target,
                                       const std::vector<KetVector>& complement_basis) {
  std::vector<KetVector> all{target};
  all.insert(all.end(), complement_basis.begin(), complement_basis.end());
  require_orthonormal(all, model.dim());

  constexpr double thr = StationarityReport::kThreshold;
  StationarityReport r;
  r.hamiltonian_residual = drive_norm(model.hamiltonian, target);
  r.h_annihilates_target = r.hamiltonian_residual <= thr;

  r.lindblad_annihilates_target = true;
  for (const auto& l : model.lindblad_ops) {
    const double residual = (l * target).norm();
    const double feed = (l.adjoint() * target).norm();
    r.lindblad_residuals.push_back(residual);
    r.lindblad_feed_norms.push_back(feed);
    r.lindblad_annihilates_target = r.lindblad_annihilates_target && residual <= thr;
    r.target_reachable = r.target_reachable || feed > thr;
  }

  r.complement_driven = !complement_basis.empty();
  for (const auto& m : complement_basis) {
    const double n = drive_norm(model.hamiltonian, m);
    r.complement_drive_norms.push_back(n);
    r.complement_driven = r.complement_driven && n > thr;
  }
  return r;
}

}  // namespace dissipa
