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

#include "permqc/ansatz.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "permqc/pauli.hpp"

namespace permqc {

namespace {

// Sites touched by each orbit element. The group sum is applied one string at a
// time, which is only exact when the orbit is mutually commuting.
std::vector<std::vector<size_t>> orbit_sites(const PauliString &generator, const SymmetryGroup &group) {
    auto orb = orbit(generator, group);
    if (!is_mutually_commuting(orb.elements)) {
        throw std::logic_error("orbit of " + generator.str() + " is not mutually commuting");
    }
    std::vector<std::vector<size_t>> out;
    out.reserve(orb.elements.size());
    for (const auto &p : orb.elements) {
        out.push_back(p.support());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<size_t, size_t>> as_pairs(const std::vector<std::vector<size_t>> &sites) {
    std::vector<std::pair<size_t, size_t>> out;
    out.reserve(sites.size());
    for (const auto &s : sites) {
        out.emplace_back(s.at(0), s.at(1));
    }
    return out;
}

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

// Shared-slot or per-gate-slot layers over the S_n block structure.
CircuitIR build_sn_structure(size_t n, size_t layers, bool share_slots) {
    require(n >= 2, "permutation-structured ansatz needs n >= 2");
    auto pairs = all_pairs(n);
    CircuitIR ir;
    ir.n_qubits = n;
    ir.kind = share_slots ? AnsatzKind::sn_invariant : AnsatzKind::free_parameters;
    size_t slot = 0;
    auto next_slot = [&](size_t layer) {
        ir.slot_layer.push_back(layer);
        return slot++;
    };
    for (size_t layer = 0; layer < layers; layer++) {
        size_t shared = share_slots ? next_slot(layer) : 0;
        for (size_t q = 0; q < n; q++) {
            ir.gates.push_back(GateInstr::rx(q, share_slots ? shared : next_slot(layer)));
        }
        shared = share_slots ? next_slot(layer) : 0;
        for (size_t q = 0; q < n; q++) {
            ir.gates.push_back(GateInstr::ry(q, share_slots ? shared : next_slot(layer)));
        }
        shared = share_slots ? next_slot(layer) : 0;
        for (auto [a, b] : pairs) {
            ir.gates.push_back(GateInstr::rzz(a, b, share_slots ? shared : next_slot(layer)));
        }
    }
    ir.n_params = slot;
    return ir;
}

}  // namespace

size_t default_layers(AnsatzKind kind) {
    switch (kind) {
        case AnsatzKind::sn_invariant:
            return kDefaultSnLayers;
        case AnsatzKind::cn_invariant:
            return kDefaultCnLayers;
        case AnsatzKind::free_parameters:
            return kDefaultFreeLayers;
        case AnsatzKind::strongly_entangling:
            return kDefaultStronglyEntanglingLayers;
        case AnsatzKind::custom:
            break;
    }
    throw std::invalid_argument("custom circuits have no default layer count");
}

std::vector<std::pair<size_t, size_t>> all_pairs(size_t n) {
    require(n >= 2, "pairs need n >= 2");
    std::vector<size_t> gen = {0, 1};
    return as_pairs(orbit_sites(PauliString::from_sites(n, gen, PauliOp::Z), SymmetryGroup::symmetric(n)));
}

std::vector<std::pair<size_t, size_t>> ring_pairs(size_t n, size_t distance) {
    require(n >= 3, "ring pairs need n >= 3");
    require(distance >= 1 && distance < n, "ring distance must be in [1, n)");
    std::vector<size_t> gen = {0, distance};
    return as_pairs(orbit_sites(PauliString::from_sites(n, gen, PauliOp::Z), SymmetryGroup::cyclic(n)));
}

CircuitIR build_sn(size_t n, size_t layers) {
    return build_sn_structure(n, layers, true);
}

CircuitIR build_free(size_t n, size_t layers) {
    return build_sn_structure(n, layers, false);
}

CircuitIR build_cn(size_t n, size_t layers) {
    require(n >= 3, "cyclic-invariant ansatz needs n >= 3");
    auto near = ring_pairs(n, 1);
    auto far = ring_pairs(n, 2);
    CircuitIR ir;
    ir.n_qubits = n;
    ir.kind = AnsatzKind::cn_invariant;
    for (size_t layer = 0; layer < layers; layer++) {
        size_t base = 4 * layer;
        for (size_t q = 0; q < n; q++) {
            ir.gates.push_back(GateInstr::rx(q, base));
        }
        for (size_t q = 0; q < n; q++) {
            ir.gates.push_back(GateInstr::ry(q, base + 1));
        }
        for (auto [a, b] : near) {
            ir.gates.push_back(GateInstr::rzz(a, b, base + 2));
        }
        for (auto [a, b] : far) {
            ir.gates.push_back(GateInstr::rzz(a, b, base + 3));
        }
        ir.slot_layer.insert(ir.slot_layer.end(), 4, layer);
    }
    ir.n_params = 4 * layers;
    return ir;
}

CircuitIR build_strongly_entangling(size_t n, size_t layers) {
    require(n >= 3, "strongly entangling ansatz needs n >= 3");
    CircuitIR ir;
    ir.n_qubits = n;
    ir.kind = AnsatzKind::strongly_entangling;
    for (size_t layer = 0; layer < layers; layer++) {
        size_t base = 3 * n * layer;
        for (size_t q = 0; q < n; q++) {
            ir.gates.push_back(GateInstr::rot3(q, base + 3 * q));
        }
        size_t range = layer % 2 == 0 ? 1 : 2;
        for (size_t q = 0; q < n; q++) {
            ir.gates.push_back(GateInstr::cnot(q, (q + range) % n));
        }
        ir.slot_layer.insert(ir.slot_layer.end(), 3 * n, layer);
    }
    ir.n_params = 3 * n * layers;
    return ir;
}

CircuitIR build_ansatz(AnsatzKind kind, size_t n, std::optional<size_t> layers) {
    size_t l = layers.value_or(default_layers(kind));
    switch (kind) {
        case AnsatzKind::sn_invariant:
            return build_sn(n, l);
        case AnsatzKind::cn_invariant:
            return build_cn(n, l);
        case AnsatzKind::free_parameters:
            return build_free(n, l);
        case AnsatzKind::strongly_entangling:
            return build_strongly_entangling(n, l);
        case AnsatzKind::custom:
            break;
    }
    throw std::invalid_argument("cannot build a custom ansatz by kind");
}

}  // namespace permqc
