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
#include <random>

#include "doctest.h"
#include "dissipa/lindblad.hpp"
#include "dissipa/models.hpp"
#include "test_support.hpp"

using namespace dissipa;
using namespace dissipa::testing;

namespace {

// Two-level atom, index 0 = |e>, index 1 = |g>.
OpenSystemModel decay_model(double gamma) {
  OpenSystemModel m(HamiltonianSpec(2), DensityMatrix::pure(basis_ket(2, 1)));
  m.lindblad_ops.push_back(std::sqrt(gamma) * transition(2, 1, 0));
  m.observables.push_back({"e", projector(basis_ket(2, 0))});
  return m;
}

class ConstantLaw final : public FeedbackLaw {
 public:
  explicit ConstantLaw(std::vector<double> f) : f_(std::move(f)) {}
  std::size_t size() const override { return f_.size(); }
  void amplitudes(const ComplexMatrix&, std::span<double> out) const override {
    std::copy(f_.begin(), f_.end(), out.begin());
  }

 private:
  std::vector<double> f_;
};

}  // namespace

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix(ComplexMatrix::Identity(3, 3) / 3.0));
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(3, 3)), InvalidInput);
  CHECK_THROWS_AS(DensityMatrix(transition(2, 0, 1) + ComplexMatrix::Identity(2, 2) / 2.0),
                  InvalidInput);
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative.diagonal() << 1.5, -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, InvalidInput);
  CHECK_THROWS_AS(DensityMatrix::pure(KetVector::Zero(2)), InvalidInput);

  const auto mix = DensityMatrix::mixture({basis_ket(3, 1), 2.0 * basis_ket(3, 2)});
  CHECK(std::abs(mix.matrix()(1, 1) - 0.5) < 1e-15);
  CHECK(std::abs(mix.matrix()(2, 2) - 0.5) < 1e-15);
  CHECK(std::abs(DensityMatrix::maximally_mixed(4).matrix()(3, 3) - 0.25) < 1e-15);
}

TEST_CASE("HamiltonianSpec") {
  HamiltonianSpec h(2);
  CHECK(h.is_time_independent());
  CHECK_THROWS_AS(h.add_static(transition(2, 0, 1)), InvalidInput);
  CHECK_THROWS_AS(h.add_static(ComplexMatrix::Identity(3, 3)), InvalidInput);
  h.add_static(sigma_z());
  h.add_rotating(0.3 * transition(2, 1, 0), 0.7);
  CHECK_FALSE(h.is_time_independent());
  for (double t : {0.0, 0.4, 3.1}) {
    const ComplexMatrix ht = h.evaluate(t);
    CHECK(is_hermitian(ht));
    CHECK(std::abs(ht(1, 0) - 0.3 * std::exp(Complex(0, 0.7 * t))) < 1e-15);
  }
}

TEST_CASE("dissipator: spontaneous decay oracle") {
  const double gamma = 0.7;
  const std::vector<ComplexMatrix> ops{std::sqrt(gamma) * transition(2, 1, 0)};
  const ComplexMatrix rho_e = projector(basis_ket(2, 0));
  ComplexMatrix oracle = ComplexMatrix::Zero(2, 2);
  oracle(1, 1) = gamma;
  oracle(0, 0) = -gamma;
  CHECK(max_abs(dissipator(ops, rho_e) - oracle) < 1e-15);

  CHECK(max_abs(dissipator(ops, projector(basis_ket(2, 1)))) == 0.0);
  CHECK(max_abs(dissipator({}, rho_e)) == 0.0);
  CHECK_THROWS_AS(dissipator(ops, ComplexMatrix::Identity(3, 3)), InvalidInput);
}

TEST_CASE("dissipator and noise are Hermitian and traceless") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = random_density(5, rng);
    const std::vector<ComplexMatrix> ops{random_matrix(5, rng), random_matrix(5, rng)};
    const ComplexMatrix l = dissipator(ops, rho);
    CHECK(max_abs(l - l.adjoint()) < 1e-12);
    CHECK(std::abs(trace(l)) < 1e-12);

    const std::vector<NoiseChannel> ch{{random_hermitian(5, rng), 0.3}, {random_hermitian(5, rng), 1.1}};
    const ComplexMatrix n = noise_superoperator(ch, rho);
    CHECK(max_abs(n - n.adjoint()) < 1e-12);
    CHECK(std::abs(trace(n)) < 1e-12);
  }
}

TEST_CASE("dissipator is invariant under unitary mixing of the jump operators") {
  std::mt19937_64 rng(5);
  const LambdaParams p;  // gamma1 == gamma2
  const auto full = build_lambda_full(p);
  const auto& l = full.model.lindblad_ops;
  const KetVector s = full.state("S"), t = full.state("T"), e = full.state("e");
  const double g = std::sqrt(p.gamma1 / 2.0);
  const std::vector<ComplexMatrix> rotated{g * outer(s, e), g * outer(t, e)};
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = random_density(3, rng);
    CHECK(max_abs(dissipator(l, rho) - dissipator(rotated, rho)) < 1e-12);
  }
}

TEST_CASE("noise superoperator: sigma_z dephasing of |+>") {
  const KetVector plus = ket({1, 1}) / std::sqrt(2.0);
  const std::vector<NoiseChannel> ch{{sigma_z(), 1.0}};
  // [sz, [sz, |+><+|]] = 2 sx, so the result is -sx.
  ComplexMatrix oracle(2, 2);
  oracle << 0, -1, -1, 0;
  CHECK(max_abs(noise_superoperator(ch, projector(plus)) - oracle) < 1e-15);

  const std::vector<NoiseChannel> off{{sigma_z(), 0.0}};
  CHECK(max_abs(noise_superoperator(off, projector(plus))) == 0.0);
  CHECK(max_abs(noise_superoperator(ch, projector(basis_ket(2, 0)))) == 0.0);
  CHECK_THROWS_AS(NoiseChannel(transition(2, 0, 1), 0.1), InvalidInput);
  CHECK_THROWS_AS(NoiseChannel(sigma_z(), -0.1), InvalidInput);
}

TEST_CASE("master_rhs limits") {
  std::mt19937_64 rng(7);
  const auto rho = random_density(2, rng);

  HamiltonianSpec h(2);
  h.add_static(sigma_x());
  const OpenSystemModel closed(h, DensityMatrix::pure(basis_ket(2, 0)));
  const ComplexMatrix von_neumann = Complex(0, -1) * commutator(sigma_x(), rho.matrix());
  CHECK(max_abs(master_rhs(closed, 0.0, rho, {}) - von_neumann) < 1e-15);

  const auto decay = decay_model(0.7);
  CHECK(max_abs(master_rhs(decay, 0.0, rho, {}) - dissipator(decay.lindblad_ops, rho)) < 1e-15);

  const auto lambda = build_lambda_full(LambdaParams{});
  const std::vector<double> zeros(2, 0.0);
  CHECK(max_abs(master_rhs(lambda.model, 0.0, lambda.model.target, zeros)) < 1e-12);
  CHECK_THROWS_AS(master_rhs(lambda.model, 0.0, lambda.model.target, std::vector<double>{0.1}),
                  InvalidInput);
}

TEST_CASE("compiled master equation agrees with the reference assembly") {
  std::mt19937_64 rng(11);
  LambdaParams lp;
  lp.theta = 0.3;
  lp.eta = 0.2;
  lp.gamma2 = 0.4;
  TwoAtomParams tp;
  tp.gamma1 = 0.7;
  const std::vector<OpenSystemModel> models{build_lambda_full(lp).model,
                                            build_two_atom_full(tp).model,
                                            build_two_atom_effective(tp).model};
  for (const auto& m : models) {
    const MasterEquation eq(m);
    const std::vector<double> f{0.3, -0.8};
    for (double t : {0.0, 1.37, 12.0}) {
      const auto rho = random_density(m.dim(), rng);
      ComplexMatrix out(m.dim(), m.dim());
      eq.rhs(t, rho.matrix(), f, out);
      const ComplexMatrix ref = master_rhs(m, t, rho, f);
      CHECK(max_abs(out - ref) < 1e-12);
      CHECK(max_abs(ref - ref.adjoint()) < 1e-12);
      CHECK(std::abs(trace(ref)) < 1e-12);
    }
  }
}

TEST_CASE("propagate: exponential decay") {
  PropagationOptions o;
  o.t_final = 1.0;
  o.record_stride = 100;
  const auto rec = propagate(decay_model(1.0), DensityMatrix::pure(basis_ket(2, 0)), o);
  CHECK(rec.times.back() == doctest::Approx(1.0));
  CHECK(std::abs(rec.population("e").back() - std::exp(-1.0)) < 1e-5);
  CHECK_THROWS_AS(rec.population("nope"), InvalidInput);
}

TEST_CASE("propagate: record grid and closing step") {
  PropagationOptions o;
  o.t_final = 1.0;
  o.dt = 0.3;
  o.record_stride = 2;
  const auto rec = propagate(decay_model(1.0), DensityMatrix::pure(basis_ket(2, 0)), o);
  REQUIRE(rec.size() == 3);
  CHECK(rec.times[0] == 0.0);
  CHECK(rec.times[1] == doctest::Approx(0.6));
  CHECK(rec.times[2] == 1.0);
  CHECK(rec.v.size() == rec.size());
  CHECK(rec.vdot.size() == rec.size());
  CHECK(rec.controls.size() == rec.size());
  CHECK(rec.populations.size() == rec.size());
}

TEST_CASE("propagate: argument checks") {
  const auto m = decay_model(1.0);
  const auto rho = DensityMatrix::pure(basis_ket(2, 0));
  PropagationOptions o;
  o.t_final = 0.0;
  CHECK_THROWS_AS(propagate(m, rho, o), InvalidInput);
  o.t_final = 1.0;
  o.dt = 2.0;
  CHECK_THROWS_AS(propagate(m, rho, o), InvalidInput);
  o.dt = 0.1;
  o.record_stride = 0;
  CHECK_THROWS_AS(propagate(m, rho, o), InvalidInput);
  o.record_stride = 1;
  CHECK_THROWS_AS(propagate(m, DensityMatrix::pure(basis_ket(3, 0)), o), InvalidInput);
}

TEST_CASE("propagate: unstable step aborts") {
  PropagationOptions o;
  o.t_final = 1.0;
  o.dt = 0.1;
  CHECK_THROWS_AS(propagate(decay_model(1000.0), DensityMatrix::pure(basis_ket(2, 0)), o),
                  PropagationError);
}

TEST_CASE("propagate: stationary target stays put") {
  const auto lambda = build_lambda_full(LambdaParams{});
  PropagationOptions o;
  o.t_final = 5.0;
  o.record_stride = 50;
  const auto rec = propagate(lambda.model, lambda.model.target, o);
  for (double v : rec.v) CHECK(std::abs(v - 1.0) < 1e-8);
}

TEST_CASE("propagate: constant feedback equals a static drive") {
  HamiltonianSpec bare(2);
  OpenSystemModel fed(bare, DensityMatrix::pure(basis_ket(2, 1)));
  fed.controls.push_back(sigma_x());
  fed.lindblad_ops.push_back(0.5 * transition(2, 1, 0));

  HamiltonianSpec driven(2);
  driven.add_static(0.3 * sigma_x());
  OpenSystemModel fixed(driven, DensityMatrix::pure(basis_ket(2, 1)));
  fixed.lindblad_ops = fed.lindblad_ops;

  PropagationOptions o;
  o.t_final = 2.0;
  const ConstantLaw law({0.3});
  const auto rho0 = DensityMatrix::pure(basis_ket(2, 0));
  const auto a = propagate(fed, rho0, o, &law);
  const auto b = propagate(fixed, rho0, o);
  CHECK(max_abs(a.final_state - b.final_state) < 1e-14);
  CHECK(a.controls.back()[0] == 0.3);

  const ConstantLaw wrong({0.3, 0.1});
  CHECK_THROWS_AS(propagate(fed, rho0, o, &wrong), InvalidInput);
}

TEST_CASE("propagate preserves density-matrix invariants across the catalog") {
  LambdaParams lp;
  lp.eta = 0.1;
  lp.theta = 0.5;
  TwoAtomParams tp;
  const std::vector<CatalogModel> catalog{build_lambda_full(lp), build_lambda_effective(lp),
                                          build_two_atom_full(tp), build_two_atom_effective(tp)};
  for (const auto& c : catalog) {
    PropagationOptions o;
    o.t_final = 4.0;
    o.dt = 2e-3;
    o.record_stride = 100;
    const auto rec = propagate(c.model, DensityMatrix::pure(c.state(c.default_initial)), o);
    CHECK(rec.max_renormalization < 1e-8);
    CHECK(max_abs(rec.final_state - rec.final_state.adjoint()) <= 1e-10);
    CHECK(std::abs(trace(rec.final_state) - 1.0) < 1e-8);
    for (std::size_t i = 0; i < rec.size(); ++i) {
      CHECK(rec.min_eigenvalues[i] >= -1e-6);
      CHECK(rec.v[i] <= 1.0 + 1e-6);
      for (double p : rec.populations[i]) {
        CHECK(p >= -1e-8);
        CHECK(p <= 1.0 + 1e-8);
      }
    }
  }
}
