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

#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "dissipa/lindblad.hpp"

namespace dissipa {

/// Three-level Lambda atom |e>, |g1>, |g2> driven on both legs with
/// Omega_1 = omega0 sin(theta), Omega_2 = omega0 cos(theta). The target is
/// |S> = cos(phi)|g1> - sin(phi)|g2>, dark whenever theta = phi.
struct LambdaParams {
  double omega0 = 1.0;
  double theta = std::numbers::pi / 4.0;
  double phi = std::numbers::pi / 4.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double mu1 = 0.8;
  double mu2 = 0.6;
  double eta = 0.0;

  void validate() const;
  double omega1() const;
  double omega2() const;
};

/// Two Lambda atoms in a single-mode cavity. The lasers on |g1> <-> |e> have
/// Omega_A = -Omega_B = omega0/sqrt(2); |g2> <-> |e> couples to the cavity
/// with strength lambda_c; a microwave of Rabi frequency omega_mw and
/// detuning delta drives |g1> <-> |g2> on both atoms.
struct TwoAtomParams {
  double omega0 = 1.0;
  double omega_mw = 0.2;
  double delta = 0.15;
  double lambda_c = 10.0;
  double kappa = 0.5;
  double gamma1 = 1.0;
  double gamma2 = 0.5;
  double mu1 = 1.0;
  double mu2 = 1.5;
  int n_max = 1;

  void validate() const;
};

/// A built model plus the labeled states that make sense in its basis.
struct CatalogModel {
  OpenSystemModel model;
  /// Normalized kets by label ("g1", "S", "psi1", ...).
  std::map<std::string, KetVector> states;
  /// |S>.
  KetVector target;
  /// Orthonormal partners of |S> on the reduced space checked by
  /// verify_stationarity.
  std::vector<KetVector> complement;
  std::string default_initial;

  /// Looks up a labeled state; throws InvalidInput for unknown labels.
  const KetVector& state(const std::string& label) const;
};

CatalogModel build_lambda_full(const LambdaParams& p);
/// Rotated picture on (|e>, |S>, |T>). Requires gamma1 == gamma2.
CatalogModel build_lambda_effective(const LambdaParams& p);

/// Atom A (x) atom B (x) cavity, atomic basis (|e>, |g1>, |g2>), photon
/// numbers 0..n_max. Dimension 9 (n_max + 1).
CatalogModel build_two_atom_full(const TwoAtomParams& p);
/// Zeno-limit model on (|S>, |T>, |psi3>, |psi4>, |D>); cavity decay drops out.
CatalogModel build_two_atom_effective(const TwoAtomParams& p);

/// Isometry whose columns are the effective basis (|S>, |T>, |psi3>, |psi4>,
/// |D>) embedded in the full two-atom space.
ComplexMatrix two_atom_effective_embedding(const TwoAtomParams& p);

/// Split of the static two-atom Hamiltonian into the classical-field part
/// (lasers only) and the dimensionless cavity coupling, H = h_p + lambda_c h_q.
struct ZenoSplit {
  ComplexMatrix h_p;
  ComplexMatrix h_q;
};
ZenoSplit two_atom_zeno_split(const TwoAtomParams& p);

struct ZenoReduction {
  /// Projector onto the selected eigenspace of h_q.
  ComplexMatrix projector;
  /// P h_p P on the full space.
  ComplexMatrix effective_h;
  /// Orthonormal basis of the eigenspace.
  std::vector<KetVector> basis;

  /// <b_i| effective_h |b_j> in the given orthonormal basis.
  ComplexMatrix restricted(const std::vector<KetVector>& in_basis) const;
};

/// Projects h_p onto the eigenspace of h_q with eigenvalue
/// `eigenvalue_select` (matched within 1e-6).
ZenoReduction zeno_reduce(const ComplexMatrix& h_p, const ComplexMatrix& h_q,
                          double eigenvalue_select);

/// lambda_c^2 / (gamma1 kappa).
double cooperativity(const TwoAtomParams& p);

}  // namespace dissipa
