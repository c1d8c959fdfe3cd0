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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "permqc/statevector.hpp"

namespace permqc {

enum class AnsatzKind { sn_invariant, cn_invariant, free_parameters, strongly_entangling, custom };

std::string to_string(AnsatzKind kind);
/// Accepts the names produced by to_string (except "custom").
AnsatzKind ansatz_from_string(const std::string &name);

/// Ordered gate list with parameter-slot bindings.
struct CircuitIR {
    size_t n_qubits = 0;
    std::vector<GateInstr> gates;
    size_t n_params = 0;
    AnsatzKind kind = AnsatzKind::custom;
    /// Layer index of each slot; drives the block-diagonal metric option. Empty
    /// means a single block.
    std::vector<size_t> slot_layer;

    /// Throws std::invalid_argument if a slot is out of range or unused, a
    /// qubit index is invalid, or a fixed gate carries a slot.
    void validate() const;

    /// One gate per line: `KIND q0[,q1] slot=<k|-> coeff=<c>`.
    std::string dump() const;
};

/// Runs the circuit on `input` and returns the output state.
StateVector run_circuit(const CircuitIR &circuit, std::span<const double> params, StateVector input);

struct CircuitJet {
    StateVector state;
    /// d|psi>/d params[j] for every slot j.
    std::vector<StateVector> derivatives;
};

/// Output state together with its exact parameter derivatives.
///
/// Forward mode: every rotation on slot j contributes
/// (-i*pi*coefficient/2) P applied right after that gate, and the contributions
/// of all gates sharing slot j are summed.
CircuitJet evaluate_with_derivatives(
    const CircuitIR &circuit, std::span<const double> params, const StateVector &input);

std::vector<StateVector> derivative_states(
    const CircuitIR &circuit, std::span<const double> params, const StateVector &input);

}  // namespace permqc
