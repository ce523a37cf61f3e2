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

#include "dissipa/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dissipa {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

// --- DensityMatrix ---------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  require_square(matrix_, "DensityMatrix");
  if (!matrix_.allFinite()) throw InvalidInput("DensityMatrix: non-finite entries");
  if (!is_hermitian(matrix_)) throw InvalidInput("DensityMatrix: not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr.real() << " differs from 1";
    throw InvalidInput(os.str());
  }
  if (min_eigenvalue(matrix_) < -kPositivityTolerance) {
    throw InvalidInput("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const KetVector& psi) {
  const double n = psi.norm();
  if (n == 0.0 || !std::isfinite(n)) throw InvalidInput("DensityMatrix::pure: zero or non-finite ket");
  const KetVector unit = psi / n;
  return DensityMatrix(projector(unit));
}

DensityMatrix DensityMatrix::mixture(const std::vector<KetVector>& kets) {
  if (kets.empty()) throw InvalidInput("DensityMatrix::mixture: no states");
  const Eigen::Index dim = kets.front().size();
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (const auto& k : kets) {
    if (k.size() != dim) throw InvalidInput("DensityMatrix::mixture: dimension mismatch");
    const double n = k.norm();
    if (n == 0.0) throw InvalidInput("DensityMatrix::mixture: zero ket");
    rho += projector(k / n);
  }
  rho /= static_cast<double>(kets.size());
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  if (dim < 1) throw InvalidInput("DensityMatrix::maximally_mixed: dim must be >= 1");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

// --- HamiltonianSpec -------------------------------------------------------

HamiltonianSpec::HamiltonianSpec(Eigen::Index dim)
    : dim_(dim), static_sum_(ComplexMatrix::Zero(dim, dim)) {
  if (dim < 1) throw InvalidInput("HamiltonianSpec: dim must be >= 1");
}

void HamiltonianSpec::add_static(ComplexMatrix term) {
  require_square(term, "HamiltonianSpec::add_static");
  if (term.rows() != dim_) throw InvalidInput("HamiltonianSpec::add_static: dimension mismatch");
  if (!term.allFinite()) throw InvalidInput("HamiltonianSpec::add_static: non-finite entries");
  if (!is_hermitian(term)) throw InvalidInput("HamiltonianSpec::add_static: term is not Hermitian");
  static_sum_ += term;
  static_terms_.push_back(std::move(term));
}

void HamiltonianSpec::add_rotating(ComplexMatrix op, double omega) {
  require_square(op, "HamiltonianSpec::add_rotating");
  if (op.rows() != dim_) throw InvalidInput("HamiltonianSpec::add_rotating: dimension mismatch");
  if (!op.allFinite() || !std::isfinite(omega)) {
    throw InvalidInput("HamiltonianSpec::add_rotating: non-finite input");
  }
  rotating_terms_.push_back({std::move(op), omega});
}

ComplexMatrix HamiltonianSpec::evaluate(double t) const {
  ComplexMatrix h = static_sum_;
  for (const auto& term : rotating_terms_) {
    const Complex phase = std::exp(kI * term.omega * t);
    h += phase * term.op + std::conj(phase) * term.op.adjoint();
  }
  return h;
}

bool HamiltonianSpec::is_time_independent() const {
  return std::all_of(rotating_terms_.begin(), rotating_terms_.end(),
                     [](const RotatingTerm& r) { return r.omega == 0.0; });
}

// --- NoiseChannel / OpenSystemModel ----------------------------------------

NoiseChannel::NoiseChannel(ComplexMatrix h, double e) : h_s(std::move(h)), eta(e) {
  require_square(h_s, "NoiseChannel");
  if (!is_hermitian(h_s)) throw InvalidInput("NoiseChannel: h_s is not Hermitian");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw InvalidInput("NoiseChannel: eta must be finite and >= 0");
}

OpenSystemModel::OpenSystemModel(HamiltonianSpec h, DensityMatrix rho_s)
    : hamiltonian(std::move(h)), target(std::move(rho_s)) {
  if (target.dim() != hamiltonian.dim()) {
    throw InvalidInput("OpenSystemModel: target dimension differs from Hamiltonian");
  }
}

void OpenSystemModel::validate() const {
  const Eigen::Index d = dim();
  if (target.dim() != d) throw InvalidInput("OpenSystemModel: target dimension mismatch");
  for (const auto& l : lindblad_ops) {
    if (l.rows() != d || l.cols() != d) throw InvalidInput("OpenSystemModel: Lindblad operator dimension mismatch");
    if (!l.allFinite()) throw InvalidInput("OpenSystemModel: non-finite Lindblad operator");
  }
  for (const auto& n : noise) {
    if (n.h_s.rows() != d) throw InvalidInput("OpenSystemModel: noise channel dimension mismatch");
  }
  for (const auto& c : controls) {
    if (c.rows() != d || c.cols() != d) throw InvalidInput("OpenSystemModel: control dimension mismatch");
    if (!is_hermitian(c)) throw InvalidInput("OpenSystemModel: control Hamiltonian is not Hermitian");
  }
  for (const auto& o : observables) {
    if (o.projector.rows() != d || o.projector.cols() != d) {
      throw InvalidInput("OpenSystemModel: observable '" + o.label + "' dimension mismatch");
    }
  }
  if (!(control_gain >= 0.0) || !std::isfinite(control_gain)) {
    throw InvalidInput("OpenSystemModel: control_gain must be finite and >= 0");
  }
  if (control_cap && !(*control_cap > 0.0)) {
    throw InvalidInput("OpenSystemModel: control_cap must be > 0");
  }
}

// --- Reference superoperators ------------------------------------------------

ComplexMatrix dissipator(const std::vector<ComplexMatrix>& lindblad_ops,
                         const ComplexMatrix& rho) {
  require_square(rho, "dissipator");
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& l : lindblad_ops) {
    require_same_dim(l, rho, "dissipator");
    const ComplexMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

ComplexMatrix dissipator(const std::vector<ComplexMatrix>& lindblad_ops,
                         const DensityMatrix& rho) {
  return dissipator(lindblad_ops, rho.matrix());
}

ComplexMatrix noise_superoperator(const std::vector<NoiseChannel>& channels,
                                  const ComplexMatrix& rho) {
  require_square(rho, "noise_superoperator");
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& ch : channels) {
    require_same_dim(ch.h_s, rho, "noise_superoperator");
    out -= 0.5 * ch.eta * ch.eta * commutator(ch.h_s, commutator(ch.h_s, rho));
  }
  return out;
}

ComplexMatrix noise_superoperator(const std::vector<NoiseChannel>& channels,
                                  const DensityMatrix& rho) {
  return noise_superoperator(channels, rho.matrix());
}

ComplexMatrix master_rhs(const OpenSystemModel& model, double t,
                         const ComplexMatrix& rho,
                         std::span<const double> control_values) {
  if (control_values.size() != model.controls.size()) {
    std::ostringstream os;
    os << "master_rhs: expected " << model.controls.size()
       << " control values, got " << control_values.size();
    throw InvalidInput(os.str());
  }
  require_same_dim(model.hamiltonian.static_sum(), rho, "master_rhs");
  ComplexMatrix h = model.hamiltonian.evaluate(t);
  for (std::size_t n = 0; n < control_values.size(); ++n) {
    h += control_values[n] * model.controls[n];
  }
  return -kI * commutator(h, rho) + noise_superoperator(model.noise, rho) +
         dissipator(model.lindblad_ops, rho);
}

ComplexMatrix master_rhs(const OpenSystemModel& model, double t,
                         const DensityMatrix& rho,
                         std::span<const double> control_values) {
  return master_rhs(model, t, rho.matrix(), control_values);
}

// --- MasterEquation ---------------------------------------------------------

namespace {

constexpr double kStructuralZero = 0.0;

bool structurally_nonzero(const Complex& z) { return std::abs(z) > kStructuralZero; }

}  // namespace

MasterEquation::MasterEquation(const OpenSystemModel& model)
    : dim_(model.dim()), num_controls_(model.controls.size()) {
  model.validate();
  const Eigen::Index d = dim_;
  const auto& rotating = model.hamiltonian.rotating_terms();
  for (const auto& term : rotating) omegas_.push_back(term.omega);
  phases_.resize(rotating.size());

  std::vector<ComplexMatrix> jump_ops;
  ComplexMatrix damping = ComplexMatrix::Zero(d, d);
  for (const auto& l : model.lindblad_ops) {
    damping += l.adjoint() * l;
    jump_ops.push_back(l);
  }
  for (const auto& ch : model.noise) {
    if (ch.eta == 0.0) continue;
    const ComplexMatrix scaled = ch.eta * ch.h_s;
    damping += scaled * scaled;
    jump_ops.push_back(scaled);
  }
  const ComplexMatrix constant = model.hamiltonian.static_sum() - 0.5 * kI * damping;

  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      GeneratorEntry e{r, c, constant(r, c), {}, {}, {}};
      bool nonzero = structurally_nonzero(e.constant);
      for (const auto& term : rotating) {
        e.forward.push_back(term.op(r, c));
        e.backward.push_back(std::conj(term.op(c, r)));
        nonzero = nonzero || structurally_nonzero(e.forward.back()) ||
                  structurally_nonzero(e.backward.back());
      }
      for (const auto& h : model.controls) {
        e.control.push_back(h(r, c));
        nonzero = nonzero || structurally_nonzero(e.control.back());
      }
      if (nonzero) generator_.push_back(std::move(e));
    }
  }

  for (const auto& j : jump_ops) {
    std::vector<Entry> entries;
    for (Eigen::Index c = 0; c < d; ++c) {
      for (Eigen::Index r = 0; r < d; ++r) {
        if (structurally_nonzero(j(r, c))) entries.push_back({r, c, j(r, c)});
      }
    }
    if (!entries.empty()) jumps_.push_back(std::move(entries));
  }
  product_.resize(d, d);
}

void MasterEquation::rhs(double t, const ComplexMatrix& rho,
                         std::span<const double> control_values,
                         ComplexMatrix& out) const {
  for (std::size_t k = 0; k < omegas_.size(); ++k) phases_[k] = std::exp(kI * omegas_[k] * t);
  const std::size_t n_ctrl = std::min(control_values.size(), num_controls_);

  // X = G rho, built row by row from the nonzeros of G.
  product_.setZero();
  for (const auto& e : generator_) {
    Complex g = e.constant;
    for (std::size_t k = 0; k < phases_.size(); ++k) {
      g += phases_[k] * e.forward[k] + std::conj(phases_[k]) * e.backward[k];
    }
    for (std::size_t n = 0; n < n_ctrl; ++n) g += control_values[n] * e.control[n];
    if (g == Complex(0.0)) continue;
    product_.row(e.row) += g * rho.row(e.col);
  }
  // -i (X - X^dag)
  out.noalias() = -kI * (product_ - product_.adjoint());

  // J rho J^dag, summed over pairs of nonzeros of J.
  for (const auto& jump : jumps_) {
    for (const auto& a : jump) {
      for (const auto& b : jump) {
        out(a.row, b.row) += a.value * rho(a.col, b.col) * std::conj(b.value);
      }
    }
  }
}

// --- propagate --------------------------------------------------------------

std::vector<double> TrajectoryRecord::population(const std::string& label) const {
  const auto it = std::find(population_labels.begin(), population_labels.end(), label);
  if (it == population_labels.end()) {
    throw InvalidInput("TrajectoryRecord: no population labeled '" + label + "'");
  }
  const auto col = static_cast<std::size_t>(it - population_labels.begin());
  std::vector<double> out;
  out.reserve(populations.size());
  for (const auto& row : populations) out.push_back(row[col]);
  return out;
}

namespace {

class Recorder {
 public:
  Recorder(const OpenSystemModel& model, const MasterEquation& eq,
           const FeedbackLaw* controller, TrajectoryRecord& record, double floor)
      : model_(model), eq_(eq), controller_(controller), record_(record), floor_(floor) {
    for (const auto& o : model.observables) record_.population_labels.push_back(o.label);
  }

  void operator()(double t, const ComplexMatrix& rho) {
    const ComplexMatrix& target = model_.target.matrix();
    const std::size_t n_ctrl = model_.controls.size();
    std::vector<double> f(controller_ ? controller_->size() : n_ctrl, 0.0);
    if (controller_) controller_->amplitudes(rho, f);
    const std::vector<double> zeros(f.size(), 0.0);

    ComplexMatrix drho(rho.rows(), rho.cols());
    eq_.rhs(t, rho, f, drho);
    const double vdot = trace_of_product(drho, target).real();
    eq_.rhs(t, rho, zeros, drho);
    const double vdot_free = trace_of_product(drho, target).real();

    const double lambda_min = min_eigenvalue(rho);
    if (lambda_min < floor_) {
      std::ostringstream os;
      os << "propagate: state lost positivity at t = " << t
         << " (minimum eigenvalue " << lambda_min << "); reduce dt";
      throw PropagationError(os.str());
    }

    record_.times.push_back(t);
    record_.v.push_back(trace_of_product(rho, target).real());
    record_.vdot.push_back(vdot);
    record_.vdot_free.push_back(vdot_free);
    record_.controls.push_back(std::move(f));
    record_.min_eigenvalues.push_back(lambda_min);
    std::vector<double> pops;
    pops.reserve(model_.observables.size());
    for (const auto& o : model_.observables) {
      pops.push_back(trace_of_product(o.projector, rho).real());
    }
    record_.populations.push_back(std::move(pops));
  }

 private:
  const OpenSystemModel& model_;
  const MasterEquation& eq_;
  const FeedbackLaw* controller_;
  TrajectoryRecord& record_;
  double floor_;
};

}  // namespace

TrajectoryRecord propagate(const OpenSystemModel& model, const DensityMatrix& rho0,
                           const PropagationOptions& options,
                           const FeedbackLaw* controller) {
  if (!(options.t_final > 0.0) || !std::isfinite(options.t_final)) {
    throw InvalidInput("propagate: t_final must be > 0");
  }
  if (!(options.dt > 0.0) || options.dt > options.t_final) {
    throw InvalidInput("propagate: dt must satisfy 0 < dt <= t_final");
  }
  if (options.record_stride < 1) throw InvalidInput("propagate: record_stride must be >= 1");
  if (rho0.dim() != model.dim()) throw InvalidInput("propagate: initial state dimension mismatch");
  if (controller && controller->size() != model.controls.size()) {
    throw InvalidInput("propagate: controller size differs from model controls");
  }

  const MasterEquation eq(model);
  TrajectoryRecord record;
  Recorder record_state(model, eq, controller, record, options.positivity_floor);

  // Full steps of dt, then a shorter closing step when t_final is not a
  // multiple of dt.
  const auto full_steps = static_cast<long long>(std::floor(options.t_final / options.dt + 1e-9));
  const double remainder = options.t_final - static_cast<double>(full_steps) * options.dt;
  const bool closing_step = remainder > 1e-12 * options.t_final;
  const long long total_steps = full_steps + (closing_step ? 1 : 0);

  const Eigen::Index d = model.dim();
  ComplexMatrix rho = rho0.matrix();
  ComplexMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);
  const std::size_t n_ctrl = controller ? controller->size() : 0;
  std::vector<double> f(n_ctrl, 0.0);

  auto eval = [&](double t, const ComplexMatrix& state, ComplexMatrix& out) {
    if (controller) controller->amplitudes(state, f);
    eq.rhs(t, state, f, out);
  };

  record_state(0.0, rho);
  for (long long step = 0; step < total_steps; ++step) {
    const double t = static_cast<double>(step) * options.dt;
    const double h = (step < full_steps) ? options.dt : remainder;

    eval(t, rho, k1);
    stage = rho + (0.5 * h) * k1;
    eval(t + 0.5 * h, stage, k2);
    stage = rho + (0.5 * h) * k2;
    eval(t + 0.5 * h, stage, k3);
    stage = rho + h * k3;
    eval(t + h, stage, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    stage = 0.5 * (rho + rho.adjoint());
    rho = stage;
    const Complex tr = rho.trace();
    record.max_renormalization = std::max(record.max_renormalization, std::abs(tr - 1.0));
    rho /= tr.real();

    if (!rho.allFinite()) {
      std::ostringstream os;
      os << "propagate: non-finite state at t = " << t + h;
      throw PropagationError(os.str());
    }

    const bool last = step + 1 == total_steps;
    if ((step + 1) % options.record_stride == 0 || last) {
      const double t_next = last ? options.t_final : t + h;
      record_state(t_next, rho);
    }
  }
  record.final_state = rho;
  return record;
}

}  // namespace dissipa
