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

#include <optional>
#include <utility>
#include <vector>

#include "permqc/circuit.hpp"

namespace permqc {

// Layer counts that put every ansatz near 120 parameters on 8 qubits.
inline constexpr size_t kDefaultSnLayers = 40;
inline constexpr size_t kDefaultCnLayers = 30;
inline constexpr size_t kDefaultFreeLayers = 3;
inline constexpr size_t kDefaultStronglyEntanglingLayers = 5;

size_t default_layers(AnsatzKind kind);

/// Qubit pairs in the S_n orbit of Z_0 Z_1 (all pairs), row-major order.
std::vector<std::pair<size_t, size_t>> all_pairs(size_t n);

/// Qubit pairs in the C_n orbit of Z_0 Z_distance, row-major order.
std::vector<std::pair<size_t, size_t>> ring_pairs(size_t n, size_t distance);

/// Permutation-invariant layers: RX on every qubit (shared slot), RY on every
/// qubit (shared slot), RZZ on every pair (shared slot). 3 slots per layer.
CircuitIR build_sn(size_t n, size_t layers = kDefaultSnLayers);

/// Cyclic-invariant layers: shared-slot RX ring, RY ring, RZZ over distance-1
/// ring pairs and RZZ over distance-2 ring pairs. 4 slots per layer.
CircuitIR build_cn(size_t n, size_t layers = kDefaultCnLayers);

/// The build_sn gate arrangement with an independent slot per gate.
CircuitIR build_free(size_t n, size_t layers = kDefaultFreeLayers);

/// Per layer: ROT3 on each qubit, then CNOT i -> (i + r) mod n for all i with r
/// alternating 1, 2, 1, ... across layers. 3n slots per layer.
CircuitIR build_strongly_entangling(size_t n, size_t layers = kDefaultStronglyEntanglingLayers);

/// Dispatch on kind; `layers` defaults to default_layers(kind).
CircuitIR build_ansatz(AnsatzKind kind, size_t n, std::optional<size_t> layers = std::nullopt);

}  // namespace permqc
