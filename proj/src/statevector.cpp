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

#include "permqc/statevector.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace permqc {

namespace {

constexpr Amplitude kI{0.0, 1.0};

void append_double(std::string &out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

StateVector::StateVector(size_t num_qubits) : StateVector(zeros(num_qubits)) {
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(size_t num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
}

StateVector StateVector::zeros(size_t num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw std::invalid_argument("at most 16 qubits are supported, got " + std::to_string(num_qubits));
    }
    return StateVector(num_qubits, std::vector<Amplitude>(size_t{1} << num_qubits));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    auto n = static_cast<size_t>(std::countr_zero(amplitudes.size()));
    if (n > kMaxQubits) {
        throw std::invalid_argument("at most 16 qubits are supported");
    }
    return StateVector(n, std::move(amplitudes));
}

double StateVector::norm() const {
    double s = 0;
    for (const auto &a : amplitudes_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

Amplitude StateVector::inner(const StateVector &other) const {
    if (other.dim() != dim()) {
        throw std::invalid_argument("inner product of states with different qubit counts");
    }
    Amplitude s = 0;
    for (size_t i = 0; i < amplitudes_.size(); i++) {
        s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return s;
}

std::string StateVector::dump_csv() const {
    std::string out = "basis_index,re,im\n";
    for (size_t i = 0; i < amplitudes_.size(); i++) {
        out += std::to_string(i);
        out += ',';
        append_double(out, amplitudes_[i].real());
        out += ',';
        append_double(out, amplitudes_[i].imag());
        out += '\n';
    }
    return out;
}

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::CZ:
            return "CZ";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::RX:
            return "RX";
        case GateKind::RY:
            return "RY";
        case GateKind::RZ:
            return "RZ";
        case GateKind::RZZ:
            return "RZZ";
        case GateKind::ROT3:
            return "ROT3";
    }
    return "?";
}

bool is_parameterized(GateKind kind) {
    return slot_count(kind) > 0;
}

size_t slot_count(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::CZ:
        case GateKind::CNOT:
            return 0;
        case GateKind::ROT3:
            return 3;
        default:
            return 1;
    }
}

size_t arity(GateKind kind) {
    switch (kind) {
        case GateKind::CZ:
        case GateKind::CNOT:
        case GateKind::RZZ:
            return 2;
        default:
            return 1;
    }
}

std::vector<size_t> GateInstr::qubits() const {
    if (arity(kind) == 2) {
        return {q0, q1};
    }
    return {q0};
}

std::vector<ElementaryRotation> elementary_rotations(const GateInstr &gate) {
    if (!gate.slot) {
        return {};
    }
    size_t s = *gate.slot;
    double c = gate.coefficient;
    switch (gate.kind) {
        case GateKind::RX:
            return {{RotationAxis::X, gate.q0, gate.q0, s, c}};
        case GateKind::RY:
            return {{RotationAxis::Y, gate.q0, gate.q0, s, c}};
        case GateKind::RZ:
            return {{RotationAxis::Z, gate.q0, gate.q0, s, c}};
        case GateKind::RZZ:
            return {{RotationAxis::ZZ, gate.q0, gate.q1, s, c}};
        case GateKind::ROT3:
            return {
                {RotationAxis::X, gate.q0, gate.q0, s, c},
                {RotationAxis::Y, gate.q0, gate.q0, s + 1, c},
                {RotationAxis::Z, gate.q0, gate.q0, s + 2, c},
            };
        default:
            return {};
    }
}

void apply_hadamard(std::span<Amplitude> psi, size_t q) {
    const double r = std::numbers::sqrt2 / 2;
    size_t mask = size_t{1} << q;
    for (size_t i = 0; i < psi.size(); i++) {
        if (i & mask) {
            continue;
        }
        Amplitude a = psi[i];
        Amplitude b = psi[i | mask];
        psi[i] = r * (a + b);
        psi[i | mask] = r * (a - b);
    }
}

void apply_cz(std::span<Amplitude> psi, size_t a, size_t b) {
    size_t mask = (size_t{1} << a) | (size_t{1} << b);
    for (size_t i = 0; i < psi.size(); i++) {
        if ((i & mask) == mask) {
            psi[i] = -psi[i];
        }
    }
}

void apply_cnot(std::span<Amplitude> psi, size_t control, size_t target) {
    size_t cmask = size_t{1} << control;
    size_t tmask = size_t{1} << target;
    for (size_t i = 0; i < psi.size(); i++) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(psi[i], psi[i | tmask]);
        }
    }
}

void apply_rotation(std::span<Amplitude> psi, RotationAxis axis, size_t q0, size_t q1, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    size_t mask = size_t{1} << q0;
    switch (axis) {
        case RotationAxis::X:
            for (size_t i = 0; i < psi.size(); i++) {
                if (i & mask) {
                    continue;
                }
                Amplitude a = psi[i];
                Amplitude b = psi[i | mask];
                psi[i] = c * a - kI * s * b;
                psi[i | mask] = c * b - kI * s * a;
            }
            break;
        case RotationAxis::Y:
            for (size_t i = 0; i < psi.size(); i++) {
                if (i & mask) {
                    continue;
                }
                Amplitude a = psi[i];
                Amplitude b = psi[i | mask];
                psi[i] = c * a - s * b;
                psi[i | mask] = s * a + c * b;
            }
            break;
        case RotationAxis::Z: {
            Amplitude down{c, -s};
            Amplitude up{c, s};
            for (size_t i = 0; i < psi.size(); i++) {
                psi[i] *= (i & mask) ? up : down;
            }
            break;
        }
        case RotationAxis::ZZ: {
            Amplitude even{c, -s};
            Amplitude odd{c, s};
            size_t mask1 = size_t{1} << q1;
            for (size_t i = 0; i < psi.size(); i++) {
                bool parity = ((i & mask) != 0) != ((i & mask1) != 0);
                psi[i] *= parity ? odd : even;
            }
            break;
        }
    }
}

void apply_generator(std::span<Amplitude> psi, RotationAxis axis, size_t q0, size_t q1) {
    size_t mask = size_t{1} << q0;
    switch (axis) {
        case RotationAxis::X:
            for (size_t i = 0; i < psi.size(); i++) {
                if (!(i & mask)) {
                    std::swap(psi[i], psi[i | mask]);
                }
            }
            break;
        case RotationAxis::Y:
            for (size_t i = 0; i < psi.size(); i++) {
                if (i & mask) {
                    continue;
                }
                Amplitude a = psi[i];
                Amplitude b = psi[i | mask];
                psi[i] = -kI * b;
                psi[i | mask] = kI * a;
            }
            break;
        case RotationAxis::Z:
            for (size_t i = 0; i < psi.size(); i++) {
                if (i & mask) {
                    psi[i] = -psi[i];
                }
            }
            break;
        case RotationAxis::ZZ: {
            size_t mask1 = size_t{1} << q1;
            for (size_t i = 0; i < psi.size(); i++) {
                if (((i & mask) != 0) != ((i & mask1) != 0)) {
                    psi[i] = -psi[i];
                }
            }
            break;
        }
    }
}

StateVector &apply_gate(StateVector &state, const GateInstr &gate, std::span<const double> params) {
    size_t n = state.num_qubits();
    if (gate.q0 >= n || (arity(gate.kind) == 2 && (gate.q1 >= n || gate.q1 == gate.q0))) {
        throw std::invalid_argument("gate " + to_string(gate.kind) + " has invalid qubit indices for n=" + std::to_string(n));
    }
    auto psi = state.amplitudes();
    switch (gate.kind) {
        case GateKind::H:
            apply_hadamard(psi, gate.q0);
            return state;
        case GateKind::CZ:
            apply_cz(psi, gate.q0, gate.q1);
            return state;
        case GateKind::CNOT:
            apply_cnot(psi, gate.q0, gate.q1);
            return state;
        default:
            break;
    }
    if (!gate.slot || *gate.slot + slot_count(gate.kind) > params.size()) {
        throw std::invalid_argument(
            "gate " + to_string(gate.kind) + " needs a parameter slot bound within " + std::to_string(params.size()) +
            " parameters");
    }
    for (const auto &r : elementary_rotations(gate)) {
        apply_rotation(psi, r.axis, r.q0, r.q1, std::numbers::pi * r.coefficient * params[r.slot] / 2);
    }
    return state;
}

StateVector prepare_graph_state(const Graph &g) {
    StateVector state(g.num_nodes());
    auto psi = state.amplitudes();
    for (size_t q = 0; q < g.num_nodes(); q++) {
        apply_hadamard(psi, q);
    }
    for (auto [i, j] : g.edges()) {
        apply_cz(psi, i, j);
    }
    return state;
}

StateVector prepare_graph_state(const Graph &g, size_t num_qubits) {
    if (g.num_nodes() != num_qubits) {
        throw std::invalid_argument(
            "graph has " + std::to_string(g.num_nodes()) + " nodes but the register has " + std::to_string(num_qubits) +
            " qubits");
    }
    return prepare_graph_state(g);
}

double expectation_mean_z(const StateVector &state) {
    auto n = static_cast<double>(state.num_qubits());
    double acc = 0;
    auto psi = state.amplitudes();
    for (size_t b = 0; b < psi.size(); b++) {
        acc += std::norm(psi[b]) * (n - 2.0 * std::popcount(b));
    }
    return acc / n;
}

}  // namespace permqc
