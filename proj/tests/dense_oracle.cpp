// Copyright 2026 The permqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dense_oracle.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "permqc/random.hpp"

namespace permqc::testing {

namespace {

const std::complex<double> kI{0, 1};

Matrix identity(size_t dim) {
    return Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

Matrix projector(int bit) {
    Matrix p = Matrix::Zero(2, 2);
    p(bit, bit) = 1;
    return p;
}

}  // namespace

Matrix pauli_matrix(PauliOp op) {
    Matrix m(2, 2);
    switch (op) {
        case PauliOp::I:
            m << 1, 0, 0, 1;
            break;
        case PauliOp::X:
            m << 0, 1, 1, 0;
            break;
        case PauliOp::Y:
            m << 0, -kI, kI, 0;
            break;
        case PauliOp::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

Matrix dense(const PauliString &p) {
    Matrix m = Matrix::Identity(1, 1);
    // Highest qubit is the leftmost Kronecker factor.
    for (size_t q = 0; q < p.num_qubits(); q++) {
        Matrix next = Eigen::kroneckerProduct(pauli_matrix(p[q]), m).eval();
        m = next;
    }
    std::complex<double> phase = 1;
    for (int k = 0; k < p.phase_power(); k++) {
        phase *= kI;
    }
    return phase * m;
}

Matrix embed_single(const Matrix &single, size_t q, size_t n) {
    Matrix m = Matrix::Identity(1, 1);
    for (size_t k = 0; k < n; k++) {
        Matrix factor = k == q ? single : identity(2);
        Matrix next = Eigen::kroneckerProduct(factor, m).eval();
        m = next;
    }
    return m;
}

Matrix expm(const Matrix &m) {
    return m.exp();
}

double spectral_norm(const Matrix &m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix dense_gate(const GateInstr &gate, std::span<const double> params, size_t n) {
    auto rotation = [&](PauliOp op, size_t slot, bool two_qubit) {
        PauliString p(n);
        std::vector<size_t> sites = two_qubit ? std::vector<size_t>{gate.q0, gate.q1} : std::vector<size_t>{gate.q0};
        p = PauliString::from_sites(n, sites, op);
        double angle = std::numbers::pi * gate.coefficient * params[slot] / 2;
        Matrix gen = dense(p);
        return expm(Matrix(-kI * angle * gen));
    };
    switch (gate.kind) {
        case GateKind::H: {
            Matrix h(2, 2);
            h << 1, 1, 1, -1;
            return embed_single(h / std::sqrt(2.0), gate.q0, n);
        }
        case GateKind::CZ: {
            Matrix z = dense(PauliString::from_sites(n, std::vector<size_t>{gate.q0}, PauliOp::Z));
            Matrix p0 = embed_single(projector(0), gate.q1, n);
            Matrix p1 = embed_single(projector(1), gate.q1, n);
            return p0 + z * p1;
        }
        case GateKind::CNOT: {
            Matrix x = embed_single(pauli_matrix(PauliOp::X), gate.q1, n);
            return embed_single(projector(0), gate.q0, n) + x * embed_single(projector(1), gate.q0, n);
        }
        case GateKind::RX:
            return rotation(PauliOp::X, *gate.slot, false);
        case GateKind::RY:
            return rotation(PauliOp::Y, *gate.slot, false);
        case GateKind::RZ:
            return rotation(PauliOp::Z, *gate.slot, false);
        case GateKind::RZZ:
            return rotation(PauliOp::Z, *gate.slot, true);
        case GateKind::ROT3: {
            Matrix rx = rotation(PauliOp::X, *gate.slot, false);
            Matrix ry = rotation(PauliOp::Y, *gate.slot + 1, false);
            Matrix rz = rotation(PauliOp::Z, *gate.slot + 2, false);
            return rz * ry * rx;
        }
    }
    return identity(size_t{1} << n);
}

Matrix dense_circuit(const CircuitIR &circuit, std::span<const double> params) {
    Matrix u = identity(size_t{1} << circuit.n_qubits);
    for (const auto &g : circuit.gates) {
        Matrix next = dense_gate(g, params, circuit.n_qubits) * u;
        u = next;
    }
    return u;
}

Vector dense_graph_state(const Graph &g) {
    size_t n = g.num_nodes();
    Vector v = Vector::Zero(static_cast<Eigen::Index>(size_t{1} << n));
    v(0) = 1;
    std::vector<double> none;
    for (size_t q = 0; q < n; q++) {
        v = dense_gate(GateInstr::h(q), none, n) * v;
    }
    for (auto [a, b] : g.edges()) {
        v = dense_gate(GateInstr::cz(a, b), none, n) * v;
    }
    return v;
}

Vector to_vector(const StateVector &s) {
    Vector v(static_cast<Eigen::Index>(s.dim()));
    for (size_t i = 0; i < s.dim(); i++) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

StateVector apply_pauli(const PauliString &p, const StateVector &psi) {
    StateVector out = StateVector::zeros(psi.num_qubits());
    std::complex<double> global = 1;
    for (int k = 0; k < p.phase_power(); k++) {
        global *= kI;
    }
    for (size_t i = 0; i < psi.dim(); i++) {
        size_t j = i;
        std::complex<double> c = global;
        for (size_t q = 0; q < p.num_qubits(); q++) {
            bool bit = (i >> q) & 1;
            switch (p[q]) {
                case PauliOp::I:
                    break;
                case PauliOp::X:
                    j ^= size_t{1} << q;
                    break;
                case PauliOp::Y:
                    j ^= size_t{1} << q;
                    c *= bit ? -kI : kI;
                    break;
                case PauliOp::Z:
                    c *= bit ? -1.0 : 1.0;
                    break;
            }
        }
        out[j] += c * psi[i];
    }
    return out;
}

bool brute_connected(const Graph &g) {
    size_t n = g.num_nodes();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    size_t components = n;
    for (auto [a, b] : g.edges()) {
        auto ra = find(a);
        auto rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            components--;
        }
    }
    return components == 1;
}

bool brute_bipartite(const Graph &g) {
    size_t n = g.num_nodes();
    auto edges = g.edges();
    for (uint64_t coloring = 0; coloring < (uint64_t{1} << n); coloring++) {
        bool ok = std::all_of(edges.begin(), edges.end(), [&](auto e) {
            return ((coloring >> e.first) & 1) != ((coloring >> e.second) & 1);
        });
        if (ok) {
            return true;
        }
    }
    return false;
}

bool brute_hamiltonian_cycle(const Graph &g) {
    size_t n = g.num_nodes();
    if (n < 3) {
        return false;
    }
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    // Node 0 fixed in front; enumerate the rest.
    do {
        bool ok = true;
        for (size_t k = 0; k < n && ok; k++) {
            ok = g.has_edge(order[k], order[(k + 1) % n]);
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return false;
}

bool brute_hamiltonian_path(const Graph &g) {
    size_t n = g.num_nodes();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    do {
        bool ok = true;
        for (size_t k = 0; k + 1 < n && ok; k++) {
            ok = g.has_edge(order[k], order[k + 1]);
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

std::vector<size_t> random_permutation(size_t n, Rng &rng) {
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    shuffle_in_place(std::span(perm), rng);
    return perm;
}

}  // namespace permqc::testing
