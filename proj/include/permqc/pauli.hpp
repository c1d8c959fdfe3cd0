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

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permqc {

/// Single-qubit Pauli letter. The numeric order (I < X < Y < Z) is the
/// canonical order used when sorting strings.
enum class PauliOp : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliOp op);
PauliOp pauli_from_char(char c);

/// Product of two single-qubit letters: a * b = i^phase * result.
struct PauliProduct {
    PauliOp result;
    uint8_t phase;
};
PauliProduct multiply(PauliOp a, PauliOp b);

/// A tensor product of single-qubit Pauli letters with a global factor i^phase.
///
/// Qubit k is letters()[k]. The text form is the letters concatenated, with an
/// optional "i^k*" prefix when the phase is nonzero (e.g. "i^1*Z").
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);
    explicit PauliString(std::vector<PauliOp> letters, uint8_t phase_power = 0);

    /// Parses the text form. Throws std::invalid_argument on malformed input.
    static PauliString from_str(std::string_view text);

    /// Phase-free string with `op` on each listed qubit and identity elsewhere.
    static PauliString from_sites(size_t num_qubits, std::span<const size_t> sites, PauliOp op);

    size_t num_qubits() const { return letters_.size(); }
    const std::vector<PauliOp> &letters() const { return letters_; }
    PauliOp operator[](size_t q) const { return letters_[q]; }
    uint8_t phase_power() const { return phase_power_; }

    /// Number of non-identity letters.
    size_t weight() const;
    /// Qubits carrying a non-identity letter, ascending.
    std::vector<size_t> support() const;

    PauliString with_phase(uint8_t phase_power) const;

    /// Image under the qubit relabeling q -> perm[q].
    PauliString permuted(std::span<const size_t> perm) const;

    std::string str() const;

    bool operator==(const PauliString &other) const = default;
    std::strong_ordering operator<=>(const PauliString &other) const;

   private:
    std::vector<PauliOp> letters_;
    uint8_t phase_power_ = 0;
};

/// Elementwise product with accumulated phase. Throws std::invalid_argument on
/// length mismatch.
PauliString multiply(const PauliString &a, const PauliString &b);
PauliString operator*(const PauliString &a, const PauliString &b);

/// True iff the strings commute, i.e. they anticommute on an even number of
/// qubits. Throws std::invalid_argument on length mismatch.
bool commutes(const PauliString &a, const PauliString &b);

/// True iff every pair in the collection commutes.
bool is_mutually_commuting(std::span<const PauliString> set);

enum class SymmetryKind { full_permutation, cyclic, trivial };

/// A group of qubit relabelings acting on n qubits.
struct SymmetryGroup {
    SymmetryKind kind = SymmetryKind::trivial;
    size_t n = 0;

    static SymmetryGroup symmetric(size_t n) { return {SymmetryKind::full_permutation, n}; }
    static SymmetryGroup cyclic(size_t n) { return {SymmetryKind::cyclic, n}; }
    static SymmetryGroup identity(size_t n) { return {SymmetryKind::trivial, n}; }

    /// n! for S_n, n for C_n, 1 for the trivial group. Throws for n! overflow (n > 20).
    uint64_t order() const;

    /// Calls `visit` once per group element, given as the image array perm[q].
    void for_each_element(const std::function<void(std::span<const size_t>)> &visit) const;

    bool operator==(const SymmetryGroup &) const = default;
};

std::string to_string(SymmetryKind kind);

/// Distinct images of a generator under a symmetry group.
struct GeneratorOrbit {
    PauliString generator;
    SymmetryGroup group;
    /// Distinct images in canonical (lexicographic, I < X < Y < Z) order.
    std::vector<PauliString> elements;
    /// order(group) / |elements|: how often each image appears in the full group sum.
    uint64_t multiplicity = 0;
};

/// Throws std::invalid_argument when the generator length differs from group.n.
GeneratorOrbit orbit(const PauliString &generator, const SymmetryGroup &group);

}  // namespace permqc
