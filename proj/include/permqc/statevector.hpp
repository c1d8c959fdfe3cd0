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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permqc/graph.hpp"

namespace permqc {

using Amplitude = std::complex<double>;

/// Dense 2^n amplitude vector. Qubit q is bit q of the basis index
/// (little-endian: qubit 0 is the least significant bit).
class StateVector {
   public:
    static constexpr size_t kMaxQubits = 16;

    /// |0...0> on n qubits.
    explicit StateVector(size_t num_qubits);

    /// Throws std::invalid_argument unless the size is a power of two.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);
    static StateVector zeros(size_t num_qubits);

    size_t num_qubits() const { return num_qubits_; }
    size_t dim() const { return amplitudes_.size(); }

    std::span<Amplitude> amplitudes() { return amplitudes_; }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    Amplitude &operator[](size_t i) { return amplitudes_[i]; }
    const Amplitude &operator[](size_t i) const { return amplitudes_[i]; }

    double norm() const;
    /// <this|other>
    Amplitude inner(const StateVector &other) const;

    /// basis_index,re,im per line with a header; for debugging only.
    std::string dump_csv() const;

    bool operator==(const StateVector &) const = default;

   private:
    StateVector(size_t num_qubits, std::vector<Amplitude> amplitudes);

    size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

enum class GateKind : uint8_t { H, CZ, CNOT, RX, RY, RZ, RZZ, ROT3 };

std::string to_string(GateKind kind);
bool is_parameterized(GateKind kind);
/// Parameter slots consumed: 3 for ROT3, 1 for other rotations, 0 otherwise.
size_t slot_count(GateKind kind);
size_t arity(GateKind kind);

/// One primitive gate. Rotation kinds implement exp(-i*pi*(coefficient*theta)/2 * P)
/// with theta = params[slot] and P one of X_q0, Y_q0, Z_q0, Z_q0 Z_q1. ROT3 is RX,
/// then RY, then RZ on q0, bound to slots slot, slot+1, slot+2. For CNOT, q0 is the
/// control.
struct GateInstr {
    GateKind kind = GateKind::H;
    size_t q0 = 0;
    size_t q1 = 0;
    std::optional<size_t> slot;
    double coefficient = 1.0;

    static GateInstr h(size_t q) { return {GateKind::H, q, q, std::nullopt, 1.0}; }
    static GateInstr cz(size_t a, size_t b) { return {GateKind::CZ, a, b, std::nullopt, 1.0}; }
    static GateInstr cnot(size_t control, size_t target) {
        return {GateKind::CNOT, control, target, std::nullopt, 1.0};
    }
    static GateInstr rx(size_t q, size_t slot, double coeff = 1.0) { return {GateKind::RX, q, q, slot, coeff}; }
    static GateInstr ry(size_t q, size_t slot, double coeff = 1.0) { return {GateKind::RY, q, q, slot, coeff}; }
    static GateInstr rz(size_t q, size_t slot, double coeff = 1.0) { return {GateKind::RZ, q, q, slot, coeff}; }
    static GateInstr rzz(size_t a, size_t b, size_t slot, double coeff = 1.0) {
        return {GateKind::RZZ, a, b, slot, coeff};
    }
    static GateInstr rot3(size_t q, size_t first_slot, double coeff = 1.0) {
        return {GateKind::ROT3, q, q, first_slot, coeff};
    }

    /// Qubits the gate acts on (one or two).
    std::vector<size_t> qubits() const;

    bool operator==(const GateInstr &) const = default;
};

/// Generator of a single-parameter rotation.
enum class RotationAxis : uint8_t { X, Y, Z, ZZ };

/// A rotation exp(-i*pi*coefficient*theta/2 * P) with theta = params[slot].
struct ElementaryRotation {
    RotationAxis axis;
    size_t q0;
    size_t q1;
    size_t slot;
    double coefficient;
};

/// Splits a parameterized gate into single-parameter rotations in application order.
std::vector<ElementaryRotation> elementary_rotations(const GateInstr &gate);

// Kernels on raw amplitude spans; the span length fixes the qubit count.
void apply_hadamard(std::span<Amplitude> psi, size_t q);
void apply_cz(std::span<Amplitude> psi, size_t a, size_t b);
void apply_cnot(std::span<Amplitude> psi, size_t control, size_t target);
/// psi <- exp(-i*angle*P) psi
void apply_rotation(std::span<Amplitude> psi, RotationAxis axis, size_t q0, size_t q1, double angle);
/// psi <- P psi
void apply_generator(std::span<Amplitude> psi, RotationAxis axis, size_t q0, size_t q1);

/// Applies one gate in place. Throws std::invalid_argument when the gate's slot is
/// missing or out of range of params, or a qubit index is invalid.
StateVector &apply_gate(StateVector &state, const GateInstr &gate, std::span<const double> params);

/// prod_{(i,j) in E} CZ_ij H^{(x)n} |0...0>.
StateVector prepare_graph_state(const Graph &g);
/// Same, checking the register width. Throws std::invalid_argument on mismatch.
StateVector prepare_graph_state(const Graph &g, size_t num_qubits);

/// <(1/n) sum_i Z_i>
double expectation_mean_z(const StateVector &state);

}  // namespace permqc
