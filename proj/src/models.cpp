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

#include "dissipa/models.hpp"

#include <cmath>
#include <sstream>

namespace dissipa {

namespace {

// Atomic levels.
constexpr Eigen::Index kE = 0;
constexpr Eigen::Index kG1 = 1;
constexpr Eigen::Index kG2 = 2;

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

ComplexMatrix hermitian_pair(const ComplexMatrix& m) { return m + m.adjoint(); }

void add_observable(OpenSystemModel& model, const std::string& label, const KetVector& ket) {
  model.observables.push_back({label, projector(ket)});
}

}  // namespace

const KetVector& CatalogModel::state(const std::string& label) const {
  const auto it = states.find(label);
  if (it == states.end()) {
    std::ostringstream os;
    os << "unknown state '" << label << "'; known:";
    for (const auto& [name, _] : states) os << ' ' << name;
    throw InvalidInput(os.str());
  }
  return it->second;
}

// --- Lambda atom -------------------------------------------------------------

void LambdaParams::validate() const {
  if (!finite_all({omega0, theta, phi, gamma1, gamma2, mu1, mu2, eta})) {
    throw InvalidInput("LambdaParams: non-finite parameter");
  }
  if (!(omega0 > 0.0)) throw InvalidInput("LambdaParams: omega0 must be > 0");
  if (gamma1 < 0.0 || gamma2 < 0.0) throw InvalidInput("LambdaParams: decay rates must be >= 0");
  if (eta < 0.0) throw InvalidInput("LambdaParams: eta must be >= 0");
}

double LambdaParams::omega1() const { return omega0 * std::sin(theta); }
double LambdaParams::omega2() const { return omega0 * std::cos(theta); }

CatalogModel build_lambda_full(const LambdaParams& p) {
  p.validate();
  constexpr Eigen::Index d = 3;
  const KetVector e = basis_ket(d, kE);
  const KetVector g1 = basis_ket(d, kG1);
  const KetVector g2 = basis_ket(d, kG2);
  const KetVector s = std::cos(p.phi) * g1 - std::sin(p.phi) * g2;
  const KetVector t = std::sin(p.phi) * g1 + std::cos(p.phi) * g2;

  const ComplexMatrix x1 = hermitian_pair(transition(d, kE, kG1));
  const ComplexMatrix x2 = hermitian_pair(transition(d, kE, kG2));

  HamiltonianSpec h(d);
  h.add_static(p.omega1() * x1 + p.omega2() * x2);

  OpenSystemModel model(std::move(h), DensityMatrix::pure(s));
  model.lindblad_ops = {std::sqrt(p.gamma1 / 2.0) * transition(d, kG1, kE),
                        std::sqrt(p.gamma2 / 2.0) * transition(d, kG2, kE)};
  model.controls = {p.mu1 * x1, p.mu2 * x2};
  model.noise = {NoiseChannel(p.omega1() * x1, p.eta), NoiseChannel(p.omega2() * x2, p.eta)};
  add_observable(model, "S", s);
  add_observable(model, "T", t);
  add_observable(model, "e", e);

  CatalogModel out{std::move(model), {}, s, {t, e}, "g1"};
  out.states = {{"e", e}, {"g1", g1}, {"g2", g2}, {"S", s}, {"T", t}};
  return out;
}

CatalogModel build_lambda_effective(const LambdaParams& p) {
  p.validate();
  if (p.gamma1 != p.gamma2) {
    throw InvalidInput("build_lambda_effective: requires gamma1 == gamma2");
  }
  constexpr Eigen::Index d = 3;
  constexpr Eigen::Index kS = 1;
  constexpr Eigen::Index kT = 2;
  const KetVector e = basis_ket(d, kE);
  const KetVector s = basis_ket(d, kS);
  const KetVector t = basis_ket(d, kT);
  const double c = std::cos(p.phi);
  const double sn = std::sin(p.phi);
  const KetVector g1 = c * s + sn * t;
  const KetVector g2 = -sn * s + c * t;

  const double omega_s = p.omega0 * std::sin(p.theta - p.phi);
  const double omega_t = p.omega0 * std::cos(p.theta - p.phi);
  HamiltonianSpec h(d);
  h.add_static(hermitian_pair(omega_s * transition(d, kE, kS) +
                              omega_t * transition(d, kE, kT)));

  // Operators of the bare picture, rewritten through the (e, g1, g2) kets.
  const ComplexMatrix x1 = hermitian_pair(outer(e, g1));
  const ComplexMatrix x2 = hermitian_pair(outer(e, g2));

  const double gamma = p.gamma1;
  OpenSystemModel model(std::move(h), DensityMatrix::pure(s));
  model.lindblad_ops = {std::sqrt(gamma / 2.0) * transition(d, kS, kE),
                        std::sqrt(gamma / 2.0) * transition(d, kT, kE)};
  model.controls = {p.mu1 * x1, p.mu2 * x2};
  model.noise = {NoiseChannel(p.omega1() * x1, p.eta), NoiseChannel(p.omega2() * x2, p.eta)};
  add_observable(model, "S", s);
  add_observable(model, "T", t);
  add_observable(model, "e", e);

  CatalogModel out{std::move(model), {}, s, {t, e}, "g1"};
  out.states = {{"e", e}, {"g1", g1}, {"g2", g2}, {"S", s}, {"T", t}};
  return out;
}

// --- Two atoms in a cavity ----------------------------------------------------

void TwoAtomParams::validate() const {
  if (!finite_all({omega0, omega_mw, delta, lambda_c, kappa, gamma1, gamma2, mu1, mu2})) {
    throw InvalidInput("TwoAtomParams: non-finite parameter");
  }
  if (!(omega0 > 0.0)) throw InvalidInput("TwoAtomParams: omega0 must be > 0");
  if (!(lambda_c > 0.0)) throw InvalidInput("TwoAtomParams: lambda_c must be > 0");
  if (kappa < 0.0 || gamma1 < 0.0 || gamma2 < 0.0) {
    throw InvalidInput("TwoAtomParams: decay rates must be >= 0");
  }
  if (n_max < 1) throw InvalidInput("TwoAtomParams: n_max must be >= 1");
}

namespace {

struct TwoAtomSpace {
  explicit TwoAtomSpace(int n_max) : photons(n_max + 1), dim(9 * photons) {}

  // Single-atom operator placed on atom 0 (A) or 1 (B).
  ComplexMatrix atom(const ComplexMatrix& op, int which) const {
    const ComplexMatrix id3 = ComplexMatrix::Identity(3, 3);
    const ComplexMatrix idc = ComplexMatrix::Identity(photons, photons);
    return which == 0 ? kron(kron(op, id3), idc) : kron(kron(id3, op), idc);
  }
  ComplexMatrix cavity(const ComplexMatrix& op) const {
    return kron(ComplexMatrix::Identity(9, 9), op);
  }
  KetVector product(Eigen::Index a, Eigen::Index b, Eigen::Index n) const {
    return kron(kron(basis_ket(3, a), basis_ket(3, b)), basis_ket(photons, n));
  }

  Eigen::Index photons;
  Eigen::Index dim;
};

struct TwoAtomKets {
  KetVector psi1, psi2, psi3, psi4, d, s, t;
};

TwoAtomKets two_atom_kets(const TwoAtomSpace& sp) {
  const double r = std::numbers::sqrt2 / 2.0;
  TwoAtomKets k;
  k.psi1 = sp.product(kG1, kG2, 0);
  k.psi2 = sp.product(kG2, kG1, 0);
  k.psi3 = sp.product(kG2, kG2, 0);
  k.psi4 = sp.product(kG1, kG1, 0);
  k.d = r * (sp.product(kE, kG2, 0) - sp.product(kG2, kE, 0));
  k.s = r * (k.psi1 - k.psi2);
  k.t = r * (k.psi1 + k.psi2);
  return k;
}

ComplexMatrix two_atom_lasers(const TwoAtomSpace& sp, const TwoAtomParams& p) {
  const double omega_a = p.omega0 / std::numbers::sqrt2;
  const double omega_b = -omega_a;
  const ComplexMatrix up = transition(3, kE, kG1);
  return hermitian_pair(omega_a * sp.atom(up, 0) + omega_b * sp.atom(up, 1));
}

ComplexMatrix two_atom_cavity_coupling(const TwoAtomSpace& sp, const TwoAtomParams& p) {
  const ComplexMatrix a = sp.cavity(annihilation(p.n_max));
  const ComplexMatrix up = transition(3, kE, kG2);
  return hermitian_pair(sp.atom(up, 0) * a + sp.atom(up, 1) * a);
}

ComplexMatrix two_atom_microwave(const TwoAtomSpace& sp, const TwoAtomParams& p) {
  const ComplexMatrix flip = transition(3, kG2, kG1);
  return p.omega_mw * (sp.atom(flip, 0) + sp.atom(flip, 1));
}

std::vector<ComplexMatrix> two_atom_controls(const TwoAtomSpace& sp, const TwoAtomParams& p) {
  const ComplexMatrix x = hermitian_pair(transition(3, kE, kG1));
  return {p.mu1 * sp.atom(x, 0), p.mu2 * sp.atom(x, 1)};
}

}  // namespace

CatalogModel build_two_atom_full(const TwoAtomParams& p) {
  p.validate();
  const TwoAtomSpace sp(p.n_max);
  const TwoAtomKets k = two_atom_kets(sp);

  HamiltonianSpec h(sp.dim);
  h.add_static(two_atom_lasers(sp, p));
  h.add_static(p.lambda_c * two_atom_cavity_coupling(sp, p));
  if (p.omega_mw != 0.0) h.add_rotating(two_atom_microwave(sp, p), p.delta);

  OpenSystemModel model(std::move(h), DensityMatrix::pure(k.s));
  const ComplexMatrix down1 = transition(3, kG1, kE);
  const ComplexMatrix down2 = transition(3, kG2, kE);
  model.lindblad_ops = {std::sqrt(p.gamma1 / 2.0) * sp.atom(down1, 0),
                        std::sqrt(p.gamma1 / 2.0) * sp.atom(down1, 1),
                        std::sqrt(p.gamma2 / 2.0) * sp.atom(down2, 0),
                        std::sqrt(p.gamma2 / 2.0) * sp.atom(down2, 1),
                        std::sqrt(p.kappa) * sp.cavity(annihilation(p.n_max))};
  model.controls = two_atom_controls(sp, p);
  add_observable(model, "S", k.s);
  add_observable(model, "T", k.t);
  add_observable(model, "D", k.d);

  CatalogModel out{std::move(model), {}, k.s, {k.t, k.psi3, k.psi4, k.d}, "psi1"};
  out.states = {{"psi1", k.psi1}, {"psi2", k.psi2}, {"psi3", k.psi3}, {"psi4", k.psi4},
                {"D", k.d},       {"S", k.s},       {"T", k.t}};
  return out;
}

ComplexMatrix two_atom_effective_embedding(const TwoAtomParams& p) {
  p.validate();
  const TwoAtomSpace sp(p.n_max);
  const TwoAtomKets k = two_atom_kets(sp);
  ComplexMatrix v(sp.dim, 5);
  v.col(0) = k.s;
  v.col(1) = k.t;
  v.col(2) = k.psi3;
  v.col(3) = k.psi4;
  v.col(4) = k.d;
  return v;
}

CatalogModel build_two_atom_effective(const TwoAtomParams& p) {
  p.validate();
  constexpr Eigen::Index d = 5;
  constexpr Eigen::Index kS = 0, kT = 1, kPsi3 = 2, kPsi4 = 3, kD = 4;
  const double r = std::numbers::sqrt2 / 2.0;

  HamiltonianSpec h(d);
  h.add_static(hermitian_pair(p.omega0 * r * transition(d, kD, kT)));
  if (p.omega_mw != 0.0) {
    h.add_rotating(std::numbers::sqrt2 * p.omega_mw *
                       (transition(d, kPsi3, kT) + transition(d, kT, kPsi4)),
                   p.delta);
  }

  const KetVector s = basis_ket(d, kS);
  OpenSystemModel model(std::move(h), DensityMatrix::pure(s));
  model.lindblad_ops = {std::sqrt(p.gamma2 / 2.0) * transition(d, kPsi3, kD),
                        std::sqrt(p.gamma1 / 4.0) * transition(d, kS, kD),
                        std::sqrt(p.gamma1 / 4.0) * transition(d, kT, kD)};

  // Control fields live on the full space; project them onto the Zeno basis.
  const TwoAtomSpace sp(p.n_max);
  const ComplexMatrix v = two_atom_effective_embedding(p);
  for (const auto& c : two_atom_controls(sp, p)) {
    const ComplexMatrix projected = v.adjoint() * c * v;
    model.controls.push_back(0.5 * (projected + projected.adjoint()));
  }

  const KetVector t = basis_ket(d, kT);
  const KetVector dk = basis_ket(d, kD);
  add_observable(model, "S", s);
  add_observable(model, "T", t);
  add_observable(model, "D", dk);

  const KetVector psi3 = basis_ket(d, kPsi3);
  const KetVector psi4 = basis_ket(d, kPsi4);
  CatalogModel out{std::move(model), {}, s, {t, psi3, psi4, dk}, "psi1"};
  out.states = {{"psi1", r * (s + t)}, {"psi2", r * (t - s)}, {"psi3", psi3},
                {"psi4", psi4},        {"D", dk},            {"S", s},
                {"T", t}};
  return out;
}

ZenoSplit two_atom_zeno_split(const TwoAtomParams& p) {
  p.validate();
  const TwoAtomSpace sp(p.n_max);
  return {two_atom_lasers(sp, p), two_atom_cavity_coupling(sp, p)};
}

// --- Zeno reduction -----------------------------------------------------------

ComplexMatrix ZenoReduction::restricted(const std::vector<KetVector>& in_basis) const {
  const auto n = static_cast<Eigen::Index>(in_basis.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = in_basis[static_cast<std::size_t>(i)].dot(
          effective_h * in_basis[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

ZenoReduction zeno_reduce(const ComplexMatrix& h_p, const ComplexMatrix& h_q,
                          double eigenvalue_select) {
  require_same_dim(h_p, h_q, "zeno_reduce");
  if (!is_hermitian(h_p)) throw InvalidInput("zeno_reduce: h_p is not Hermitian");
  constexpr double tol = 1e-6;
  const HermitianEigen eig = hermitian_eigen(h_q);
  ZenoReduction out;
  out.projector = ComplexMatrix::Zero(h_q.rows(), h_q.cols());
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    if (std::abs(eig.eigenvalues[i] - eigenvalue_select) <= tol) {
      out.basis.push_back(eig.eigenvectors[i]);
      out.projector += projector(eig.eigenvectors[i]);
    }
  }
  if (out.basis.empty()) {
    std::ostringstream os;
    os << "zeno_reduce: " << eigenvalue_select << " is not an eigenvalue of h_q";
    throw InvalidInput(os.str());
  }
  out.effective_h = out.projector * h_p * out.projector;
  return out;
}

double cooperativity(const TwoAtomParams& p) {
  if (!(p.gamma1 > 0.0) || !(p.kappa > 0.0)) {
    throw InvalidInput("cooperativity: gamma1 and kappa must be > 0");
  }
  return p.lambda_c * p.lambda_c / (p.gamma1 * p.kappa);
}

}  // namespace dissipa
