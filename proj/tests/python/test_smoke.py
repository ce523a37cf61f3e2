# Copyright 2026 The dissipa Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import dissipa

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


def test_operator_algebra():
    xx = dissipa.kron(SX, SX)
    assert np.allclose(xx @ np.array([1, 0, 0, 0]), [0, 0, 0, 1])
    assert np.allclose(dissipa.commutator(SX, SY), 2j * SZ)
    values, vectors = dissipa.hermitian_eigen(SX)
    assert values == pytest.approx([-1.0, 1.0])
    assert np.allclose(vectors.conj().T @ vectors, np.eye(2))
    with pytest.raises(dissipa.InvalidInput):
        dissipa.hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))


def test_dissipator_and_noise():
    lower = np.array([[0, 0], [1, 0]], dtype=complex)  # |g><e| with e first
    rho_e = np.diag([1.0, 0.0]).astype(complex)
    assert np.allclose(dissipa.dissipator([lower], rho_e), np.diag([-1.0, 1.0]))
    plus = np.full((2, 2), 0.5, dtype=complex)
    assert np.allclose(dissipa.noise_superoperator(SZ, 1.0, plus), -SX)


def test_models_and_feedback():
    p = dissipa.LambdaParams()
    p.gamma1 = p.gamma2 = 0.5
    model = dissipa.build_lambda_full(p)
    assert model.dim == 3
    assert model.verify()["all_pass"]
    rho = np.diag([0.2, 0.5, 0.3]).astype(complex)
    rho[1, 2] = rho[2, 1] = 0.1
    speed = model.speed(0.0, rho)
    assert speed["vdot_controlled"] - speed["vdot_free"] == pytest.approx(
        sum(f * f for f in speed["controls"]), abs=1e-12)
    target = np.outer(model.target, model.target.conj())
    assert np.allclose(model.control_amplitudes(target), 0.0, atol=1e-14)

    two = dissipa.build_two_atom_effective(dissipa.TwoAtomParams())
    d, t = two.states["D"], two.states["T"]
    assert d.conj() @ two.hamiltonian(0.0) @ t == pytest.approx(1 / math.sqrt(2))
    assert dissipa.cooperativity(dissipa.TwoAtomParams()) == pytest.approx(200.0)


def test_propagation_decay_to_target():
    model = dissipa.build_lambda_full(dissipa.LambdaParams())
    rec = model.propagate("g1", t_final=10.0, record_stride=100)
    assert rec["t"][-1] == pytest.approx(10.0)
    assert rec["populations"]["S"][-1] == pytest.approx(0.9509, abs=1e-3)
    assert np.trace(rec["final_state"]).real == pytest.approx(1.0, abs=1e-12)


def test_experiment_runner():
    cfg = dissipa.ExperimentConfig.parse(
        "model = lambda_full\ncontrols = on\nt_final = 2\nrecord_stride = 100\n"
        "sweep.model.gamma = 0.5, 1\n")
    axes, cells = dissipa.sweep(cfg, jobs=2)
    assert axes == ["model.gamma"]
    assert len(cells) == 2
    cfg.set("model.gamma", 1.0)
    assert dissipa.simulate(cfg)["V"][-1] == cells[1]["F_S"]
    rows = dissipa.noise_scan(cfg, [0.0, 0.1])
    assert [r[0] for r in rows] == [0.0, 0.0, 0.1, 0.1]
    assert dissipa.verify(cfg)["all_pass"]
    with pytest.raises(dissipa.ConfigError):
        dissipa.compare_zeno(cfg)
    cfg.clear_sweep()
    assert dissipa.compare_zeno(cfg)["max_abs_delta_P_S"] < 1e-8
    assert dissipa.format_double(0.1) == "1.0000000000000001e-01"
    with pytest.raises(dissipa.ConfigError):
        dissipa.ExperimentConfig.parse("model = nope\n")
