# Copyright 2026 The permqc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import permqc


def test_pauli_algebra():
    assert str(permqc.PauliString("X") * permqc.PauliString("Y")) == "i^1*Z"
    assert permqc.commutes(permqc.PauliString("XX"), permqc.PauliString("ZZ"))
    assert not permqc.commutes(permqc.PauliString("X"), permqc.PauliString("Z"))
    elements, multiplicity = permqc.orbit(permqc.PauliString("ZZIIIIII"), "symmetric")
    assert len(elements) == 28
    assert multiplicity == 40320 // 28
    assert permqc.is_mutually_commuting(elements)
    with pytest.raises(ValueError):
        permqc.commutes(permqc.PauliString("X"), permqc.PauliString("XX"))


def test_graph_oracles_and_counts():
    assert permqc.is_connected(permqc.Graph.complete(8))
    assert not permqc.is_bipartite(permqc.Graph.cycle(5))
    assert not permqc.has_hamiltonian_path(permqc.Graph.star(8))
    assert permqc.count_unlabeled_graphs(4) == 11
    assert permqc.count_labeled_graphs(4) == 64
    with pytest.raises(ValueError):
        permqc.count_unlabeled_graphs(8)
    g = permqc.erdos_renyi(8, 0.5, seed=3)
    assert g == permqc.erdos_renyi(8, 0.5, seed=3)


def test_dataset_is_balanced():
    data = permqc.generate_dataset("bipartite", 4, 20, seed=1)
    labels = [label for _, label in data]
    assert labels.count(1) == 10 and labels.count(-1) == 10
    assert all((label == 1) == permqc.is_bipartite(g) for g, label in data)


def test_circuits_and_readout():
    sn = permqc.build_ansatz("sn_invariant", 8)
    assert sn.n_params == 120
    assert sn.num_gates == 1760
    assert permqc.build_ansatz("free_parameters", 8).n_params == 132
    state = permqc.prepare_graph_state(permqc.Graph(3))
    assert abs(permqc.expectation_mean_z(state)) < 1e-15
    amps = state.amplitudes()
    assert all(abs(a - 1 / math.sqrt(8)) < 1e-15 for a in amps)


def test_invariance_gradient_and_metric():
    circuit = permqc.build_ansatz("sn_invariant", 5, layers=3)
    rng = np.random.default_rng(0)
    params = list(rng.uniform(-1, 1, circuit.n_params))
    g = permqc.erdos_renyi(5, 0.5, seed=9)
    h = g.relabeled([3, 1, 4, 0, 2])
    assert abs(permqc.predict(circuit, params, g) - permqc.predict(circuit, params, h)) < 1e-9

    batch = [(g, 1 if permqc.is_connected(g) else -1)]
    grad = np.array(permqc.gradient(circuit, params, batch))
    step = 1e-5
    for j in range(circuit.n_params):
        plus = list(params)
        minus = list(params)
        plus[j] += step
        minus[j] -= step
        lp = permqc.loss_mse([permqc.predict(circuit, plus, g)], [batch[0][1]])
        lm = permqc.loss_mse([permqc.predict(circuit, minus, g)], [batch[0][1]])
        assert abs((lp - lm) / (2 * step) - grad[j]) < 1e-6

    metric = permqc.fubini_study_metric(circuit, params, g)
    assert metric.shape == (circuit.n_params, circuit.n_params)
    assert np.allclose(metric, metric.T, atol=1e-12)
    assert np.linalg.eigvalsh(metric).min() > -1e-10
    moved = permqc.qng_step(params, list(grad), metric, 0.01, 1e-3)
    assert len(moved) == circuit.n_params


def test_classify_and_training():
    assert permqc.classify(0.4) == 1
    assert permqc.classify(-0.5) == -1
    assert permqc.classify(-0.005) is None
    epochs = permqc.train_run(
        "sn_invariant", "connected", n=4, total=40, dataset_seed=1, seed=0,
        epochs=2, train_per_epoch=10, minibatch=5, layers=2)
    assert [e["epoch"] for e in epochs] == [1, 2]
    assert all(0 <= e["val_acc"] <= 1 for e in epochs)
