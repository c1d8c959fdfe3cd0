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

#include "permqc/circuit.hpp"

#include <charconv>
#include <numbers>
#include <stdexcept>

namespace permqc {

std::string to_string(AnsatzKind kind) {
    switch (kind) {
        case AnsatzKind::sn_invariant:
            return "sn_invariant";
        case AnsatzKind::cn_invariant:
            return "cn_invariant";
        case AnsatzKind::free_parameters:
            return "free_parameters";
        case AnsatzKind::strongly_entangling:
            return "strongly_entangling";
        case AnsatzKind::custom:
            return "custom";
    }
    return "?";
}

AnsatzKind ansatz_from_string(const std::string &name) {
    for (auto k : {AnsatzKind::sn_invariant, AnsatzKind::cn_invariant, AnsatzKind::free_parameters,
                   AnsatzKind::strongly_entangling}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument(
        "unknown ansatz '" + name + "' (expected sn_invariant, cn_invariant, free_parameters or strongly_entangling)");
}

void CircuitIR::validate() const {
    std::vector<bool> used(n_params, false);
    for (size_t k = 0; k < gates.size(); k++) {
        const auto &g = gates[k];
        auto where = [&] {
            return "gate " + std::to_string(k) + " (" + to_string(g.kind) + ")";
        };
        if (g.q0 >= n_qubits || (arity(g.kind) == 2 && (g.q1 >= n_qubits || g.q1 == g.q0))) {
            throw std::invalid_argument(where() + " has invalid qubit indices");
        }
        size_t slots = slot_count(g.kind);
        if (slots == 0) {
            if (g.slot) {
                throw std::invalid_argument(where() + " is not parameterized but carries a slot");
            }
            continue;
        }
        if (!g.slot || *g.slot + slots > n_params) {
            throw std::invalid_argument(where() + " has a missing or out-of-range slot");
        }
        for (size_t s = 0; s < slots; s++) {
            used[*g.slot + s] = true;
        }
    }
    for (size_t s = 0; s < n_params; s++) {
        if (!used[s]) {
            throw std::invalid_argument("parameter slot " + std::to_string(s) + " is never referenced");
        }
    }
    if (!slot_layer.empty() && slot_layer.size() != n_params) {
        throw std::invalid_argument("slot_layer size does not match n_params");
    }
}

std::string CircuitIR::dump() const {
    std::string out;
    for (const auto &g : gates) {
        out += to_string(g.kind);
        out += ' ';
        out += std::to_string(g.q0);
        if (arity(g.kind) == 2) {
            out += ',';
            out += std::to_string(g.q1);
        }
        out += " slot=";
        out += g.slot ? std::to_string(*g.slot) : "-";
        out += " coeff=";
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), g.coefficient);
        out.append(buf, res.ptr);
        out += '\n';
    }
    return out;
}

StateVector run_circuit(const CircuitIR &circuit, std::span<const double> params, StateVector input) {
    if (input.num_qubits() != circuit.n_qubits) {
        throw std::invalid_argument("input state width does not match the circuit");
    }
    for (const auto &g : circuit.gates) {
        apply_gate(input, g, params);
    }
    return input;
}

CircuitJet evaluate_with_derivatives(
    const CircuitIR &circuit, std::span<const double> params, const StateVector &input) {
    if (input.num_qubits() != circuit.n_qubits) {
        throw std::invalid_argument("input state width does not match the circuit");
    }
    if (params.size() < circuit.n_params) {
        throw std::invalid_argument("parameter vector shorter than the circuit's slot count");
    }
    CircuitJet jet{input, std::vector<StateVector>(circuit.n_params, StateVector::zeros(circuit.n_qubits))};
    // Derivatives stay identically zero until their slot's first gate.
    std::vector<size_t> active;
    std::vector<bool> is_active(circuit.n_params, false);
    StateVector scratch = StateVector::zeros(circuit.n_qubits);

    for (const auto &g : circuit.gates) {
        if (!is_parameterized(g.kind)) {
            apply_gate(jet.state, g, params);
            for (size_t j : active) {
                apply_gate(jet.derivatives[j], g, params);
            }
            continue;
        }
        if (!g.slot || *g.slot + slot_count(g.kind) > circuit.n_params) {
            throw std::invalid_argument("gate " + to_string(g.kind) + " has a missing or out-of-range slot");
        }
        for (const auto &r : elementary_rotations(g)) {
            double angle = std::numbers::pi * r.coefficient * params[r.slot] / 2;
            apply_rotation(jet.state.amplitudes(), r.axis, r.q0, r.q1, angle);
            for (size_t j : active) {
                apply_rotation(jet.derivatives[j].amplitudes(), r.axis, r.q0, r.q1, angle);
            }
            if (!is_active[r.slot]) {
                is_active[r.slot] = true;
                active.push_back(r.slot);
            }
            scratch = jet.state;
            apply_generator(scratch.amplitudes(), r.axis, r.q0, r.q1);
            Amplitude factor{0.0, -std::numbers::pi * r.coefficient / 2};
            auto d = jet.derivatives[r.slot].amplitudes();
            auto p = scratch.amplitudes();
            for (size_t i = 0; i < d.size(); i++) {
                d[i] += factor * p[i];
            }
        }
    }
    return jet;
}

std::vector<StateVector> derivative_states(
    const CircuitIR &circuit, std::span<const double> params, const StateVector &input) {
    return evaluate_with_derivatives(circuit, params, input).derivatives;
}

}  // namespace permqc
