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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dissipa/lyapunov.hpp"
#include "dissipa/models.hpp"
#include "test_support.hpp"

using namespace dissipa;
using namespace dissipa::testing;

namespace {

OpenSystemModel qubit_with_control(const KetVector& target, const ComplexMatrix& h) {
  OpenSystemModel m(HamiltonianSpec(2), DensityMatrix::pure(target));
  m.controls.push_back(h);
  return m;
}

double sum_of_squares(const std::vector<double>& f) {
  double s = 0.0;
  for (double x : f) s += x * x;
  return s;
}

}  // namespace

TEST_CASE("lyapunov_v") {
  const auto s = DensityMatrix::pure(basis_ket(3, 1));
  CHECK(lyapunov_v(s, s) == doctest::Approx(1.0));
  CHECK(lyapunov_v(DensityMatrix::pure(basis_ket(3, 0)), s) == 0.0);
  CHECK(lyapunov_v(DensityMatrix::maximally_mixed(3), s) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(lyapunov_v(DensityMatrix::maximally_mixed(2), s), InvalidInput);
}

TEST_CASE("control amplitude: sigma_y drive from |0> toward |+>") {
  const KetVector plus = ket({1, 1}) / std::sqrt(2.0);
  const auto m = qubit_with_control(plus, sigma_y());
  // -i[sy, |0><0|] = sx and <+|sx|+> = 1.
  const auto f = control_amplitudes(m, DensityMatrix::pure(basis_ket(2, 0)));
  REQUIRE(f.size() == 1);
  CHECK(std::abs(f[0] - 1.0) < 1e-15);

  CHECK(control_amplitudes(m, m.target)[0] == doctest::Approx(0.0).epsilon(1e-15));
  // sz commutes with |0><0|.
  const auto mz = qubit_with_control(plus, sigma_z());
  CHECK(std::abs(control_amplitudes(mz, DensityMatrix::pure(basis_ket(2, 0)))[0]) < 1e-15);
}

TEST_CASE("control gain and cap") {
  const KetVector plus = ket({1, 1}) / std::sqrt(2.0);
  auto m = qubit_with_control(plus, sigma_y());
  const auto rho = DensityMatrix::pure(basis_ket(2, 0));
  m.control_gain = 2.5;
  CHECK(control_amplitudes(m, rho)[0] == doctest::Approx(2.5));
  m.control_cap = 0.4;
  CHECK(control_amplitudes(m, rho)[0] == doctest::Approx(0.4));

  const OpenSystemModel none(HamiltonianSpec(2), DensityMatrix::pure(plus));
  CHECK_THROWS_AS(control_amplitudes(none, rho), InvalidInput);
}

TEST_CASE("feedback vanishes at the target for random Hermitian controls") {
  std::mt19937_64 rng(29);
  for (int d : {2, 3, 7}) {
    const auto target = random_density(d, rng);
    OpenSystemModel m(HamiltonianSpec(d), target);
    for (int n = 0; n < 3; ++n) m.controls.push_back(random_hermitian(d, rng));
    for (double f : control_amplitudes(m, target)) CHECK(std::abs(f) < 1e-12);
  }
}

TEST_CASE("controlled speed exceeds free speed by the sum of squared amplitudes") {
  std::mt19937_64 rng(31);
  LambdaParams lp;
  lp.gamma1 = lp.gamma2 = 0.5;
  lp.theta = 0.4;
  const std::vector<OpenSystemModel> models{build_lambda_full(lp).model,
                                            build_two_atom_full(TwoAtomParams{}).model};
  for (const auto& m : models) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = random_density(m.dim(), rng);
      const auto r = evolution_speed(m, 0.3 * trial, rho, true);
      CHECK(std::abs(r.vdot_controlled - r.vdot_free - r.control_contribution) < 1e-10);
      CHECK(std::abs(r.control_contribution - sum_of_squares(r.controls)) < 1e-10);
      CHECK(r.control_contribution >= -1e-12);
      CHECK(r.v == doctest::Approx(lyapunov_v(rho, m.target)));

      const auto off = evolution_speed(m, 0.3 * trial, rho, false);
      CHECK(off.control_contribution == 0.0);
      CHECK(off.vdot_controlled == off.vdot_free);
    }
  }
}

TEST_CASE("speed at a stationary target is zero") {
  const auto c = build_lambda_full(LambdaParams{});
  CHECK(std::abs(evolution_speed(c.model, 0.0, c.model.target, false).vdot_free) < 1e-12);
}

TEST_CASE("general speed matches the effective-rate form") {
  std::mt19937_64 rng(37);
  LambdaParams lp;
  lp.gamma1 = lp.gamma2 = 0.8;
  const auto lam = build_lambda_effective(lp);
  // Only |S><e| feeds |S>: Gamma = gamma/2 on |e>.
  const std::vector<double> lam_rates{lp.gamma1 / 2.0};
  const std::vector<KetVector> lam_excited{lam.state("e")};

  TwoAtomParams tp;
  tp.gamma1 = 1.3;
  const auto two = build_two_atom_effective(tp);
  const std::vector<double> two_rates{tp.gamma1 / 4.0};
  const std::vector<KetVector> two_excited{two.state("D")};

  for (int trial = 0; trial < 10; ++trial) {
    const auto r1 = random_density(3, rng);
    CHECK(std::abs(evolution_speed(lam.model, 0.0, r1, false).vdot_free -
                   effective_speed(lam_rates, lam_excited, r1)) < 1e-10);
    const auto r2 = random_density(5, rng);
    CHECK(std::abs(evolution_speed(two.model, 0.7 * trial, r2, false).vdot_free -
                   effective_speed(two_rates, two_excited, r2)) < 1e-10);
  }
  CHECK_THROWS_AS(effective_speed(lam_rates, {}, DensityMatrix::maximally_mixed(3)), InvalidInput);
}

TEST_CASE("global phase on the target changes nothing") {
  std::mt19937_64 rng(41);
  const auto c = build_lambda_full(LambdaParams{});
  OpenSystemModel phased = c.model;
  phased.target = DensityMatrix::pure(std::exp(Complex(0, 1.234)) * c.target);
  const auto rho = random_density(3, rng);
  const auto a = evolution_speed(c.model, 0.0, rho, true);
  const auto b = evolution_speed(phased, 0.0, rho, true);
  CHECK(a.v == doctest::Approx(b.v).epsilon(1e-14));
  CHECK(a.vdot_controlled == doctest::Approx(b.vdot_controlled).epsilon(1e-12));
  for (std::size_t n = 0; n < a.controls.size(); ++n) {
    CHECK(a.controls[n] == doctest::Approx(b.controls[n]).epsilon(1e-12));
  }
}

TEST_CASE("verify_stationarity on the lambda model") {
  LambdaParams lp;
  const auto eff = build_lambda_effective(lp);
  const auto good = verify_stationarity(eff.model, eff.target, eff.complement);
  CHECK(good.h_annihilates_target);
  CHECK(good.lindblad_annihilates_target);
  CHECK(good.target_reachable);
  CHECK(good.complement_driven);
  CHECK(good.all_pass());

  lp.theta = lp.phi + 0.3;
  const auto bad_model = build_lambda_full(lp);
  const auto bad = verify_stationarity(bad_model.model, bad_model.target, bad_model.complement);
  CHECK_FALSE(bad.h_annihilates_target);
  CHECK(bad.hamiltonian_residual == doctest::Approx(lp.omega0 * std::sin(0.3)));
  CHECK_FALSE(bad.all_pass());
}

TEST_CASE("verify_stationarity: null Hamiltonian and bad bases") {
  OpenSystemModel m(HamiltonianSpec(2), DensityMatrix::pure(basis_ket(2, 0)));
  m.lindblad_ops.push_back(transition(2, 0, 1));
  const auto r = verify_stationarity(m, basis_ket(2, 0), {basis_ket(2, 1)});
  CHECK(r.h_annihilates_target);
  CHECK(r.target_reachable);
  CHECK_FALSE(r.complement_driven);
  for (double x : r.lindblad_residuals) CHECK(x >= 0.0);

  CHECK_THROWS_AS(verify_stationarity(m, basis_ket(2, 0), {basis_ket(2, 0)}), InvalidInput);
  CHECK_THROWS_AS(verify_stationarity(m, 2.0 * basis_ket(2, 0), {}), InvalidInput);
}

TEST_CASE("Lyapunov function grows monotonically for verified models") {
  LambdaParams lp;
  lp.gamma1 = lp.gamma2 = 0.6;
  TwoAtomParams tp;
  const std::vector<CatalogModel> verified{build_lambda_full(lp), build_lambda_effective(lp),
                                           build_two_atom_effective(tp)};
  for (const auto& c : verified) {
    REQUIRE(verify_stationarity(c.model, c.target, c.complement).all_pass());
    PropagationOptions o;
    o.t_final = 15.0;
    o.dt = 2e-3;
    o.record_stride = 5;
    for (const auto& [label, ket] : c.states) {
      const auto rec = propagate(c.model, DensityMatrix::pure(ket), o);
      for (double v : rec.vdot_free) CHECK(v >= -1e-10);
    }
  }
}
