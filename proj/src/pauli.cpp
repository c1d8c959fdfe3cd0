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

#include "permqc/pauli.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace permqc {

char to_char(PauliOp op) {
    return "IXYZ"[static_cast<uint8_t>(op)];
}

PauliOp pauli_from_char(char c) {
    switch (c) {
        case 'I':
            return PauliOp::I;
        case 'X':
            return PauliOp::X;
        case 'Y':
            return PauliOp::Y;
        case 'Z':
            return PauliOp::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

PauliProduct multiply(PauliOp a, PauliOp b) {
    auto x = static_cast<uint8_t>(a);
    auto y = static_cast<uint8_t>(b);
    if (x == 0) {
        return {b, 0};
    }
    if (y == 0 || x == y) {
        return {x == y ? PauliOp::I : a, 0};
    }
    // X*Y = iZ, Y*Z = iX, Z*X = iY; the reversed orders pick up -i.
    bool cyclic = (y + 3 - x) % 3 == 1;
    return {static_cast<PauliOp>(x ^ y), static_cast<uint8_t>(cyclic ? 1 : 3)};
}

PauliString::PauliString(size_t num_qubits) : letters_(num_qubits, PauliOp::I) {
}

PauliString::PauliString(std::vector<PauliOp> letters, uint8_t phase_power)
    : letters_(std::move(letters)), phase_power_(phase_power & 3) {
}

PauliString PauliString::from_str(std::string_view text) {
    uint8_t phase = 0;
    if (text.starts_with("i^")) {
        auto star = text.find('*');
        if (star == std::string_view::npos || star == 2) {
            throw std::invalid_argument("malformed phase prefix in Pauli string: " + std::string(text));
        }
        unsigned k = 0;
        for (char c : text.substr(2, star - 2)) {
            if (c < '0' || c > '9') {
                throw std::invalid_argument("malformed phase exponent in Pauli string: " + std::string(text));
            }
            k = (k * 10 + static_cast<unsigned>(c - '0')) & 3;
        }
        phase = static_cast<uint8_t>(k);
        text.remove_prefix(star + 1);
    }
    std::vector<PauliOp> letters;
    letters.reserve(text.size());
    for (char c : text) {
        letters.push_back(pauli_from_char(c));
    }
    return PauliString(std::move(letters), phase);
}

PauliString PauliString::from_sites(size_t num_qubits, std::span<const size_t> sites, PauliOp op) {
    PauliString result(num_qubits);
    for (size_t q : sites) {
        if (q >= num_qubits) {
            throw std::invalid_argument("site index out of range");
        }
        result.letters_[q] = op;
    }
    return result;
}

size_t PauliString::weight() const {
    return static_cast<size_t>(std::count_if(letters_.begin(), letters_.end(), [](PauliOp p) {
        return p != PauliOp::I;
    }));
}

std::vector<size_t> PauliString::support() const {
    std::vector<size_t> out;
    for (size_t q = 0; q < letters_.size(); q++) {
        if (letters_[q] != PauliOp::I) {
            out.push_back(q);
        }
    }
    return out;
}

PauliString PauliString::with_phase(uint8_t phase_power) const {
    return PauliString(letters_, phase_power);
}

PauliString PauliString::permuted(std::span<const size_t> perm) const {
    if (perm.size() != letters_.size()) {
        throw std::invalid_argument("permutation size does not match Pauli string length");
    }
    std::vector<PauliOp> out(letters_.size(), PauliOp::I);
    for (size_t q = 0; q < letters_.size(); q++) {
        out[perm[q]] = letters_[q];
    }
    return PauliString(std::move(out), phase_power_);
}

std::string PauliString::str() const {
    std::string out;
    if (phase_power_ != 0) {
        out += "i^";
        out += static_cast<char>('0' + phase_power_);
        out += '*';
    }
    for (PauliOp p : letters_) {
        out += to_char(p);
    }
    return out;
}

std::strong_ordering PauliString::operator<=>(const PauliString &other) const {
    if (auto c = letters_ <=> other.letters_; c != 0) {
        return c;
    }
    return phase_power_ <=> other.phase_power_;
}

static void require_same_length(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "Pauli string length mismatch: " + std::to_string(a.num_qubits()) + " vs " +
            std::to_string(b.num_qubits()));
    }
}

PauliString multiply(const PauliString &a, const PauliString &b) {
    require_same_length(a, b);
    std::vector<PauliOp> letters(a.num_qubits());
    unsigned phase = a.phase_power() + b.phase_power();
    for (size_t q = 0; q < letters.size(); q++) {
        auto p = multiply(a[q], b[q]);
        letters[q] = p.result;
        phase += p.phase;
    }
    return PauliString(std::move(letters), static_cast<uint8_t>(phase & 3));
}

PauliString operator*(const PauliString &a, const PauliString &b) {
    return multiply(a, b);
}

bool commutes(const PauliString &a, const PauliString &b) {
    require_same_length(a, b);
    size_t anticommuting = 0;
    for (size_t q = 0; q < a.num_qubits(); q++) {
        if (a[q] != PauliOp::I && b[q] != PauliOp::I && a[q] != b[q]) {
            anticommuting++;
        }
    }
    return anticommuting % 2 == 0;
}

bool is_mutually_commuting(std::span<const PauliString> set) {
    for (size_t i = 0; i < set.size(); i++) {
        for (size_t j = i + 1; j < set.size(); j++) {
            if (!commutes(set[i], set[j])) {
                return false;
            }
        }
    }
    return true;
}

uint64_t SymmetryGroup::order() const {
    switch (kind) {
        case SymmetryKind::full_permutation: {
            if (n > 20) {
                throw std::overflow_error("order of S_n does not fit in 64 bits for n > 20");
            }
            uint64_t f = 1;
            for (uint64_t k = 2; k <= n; k++) {
                f *= k;
            }
            return f;
        }
        case SymmetryKind::cyclic:
            return n;
        case SymmetryKind::trivial:
            return 1;
    }
    return 1;
}

void SymmetryGroup::for_each_element(const std::function<void(std::span<const size_t>)> &visit) const {
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    switch (kind) {
        case SymmetryKind::full_permutation:
            do {
                visit(perm);
            } while (std::next_permutation(perm.begin(), perm.end()));
            break;
        case SymmetryKind::cyclic:
            for (size_t shift = 0; shift < std::max<size_t>(n, 1); shift++) {
                for (size_t q = 0; q < n; q++) {
                    perm[q] = (q + shift) % n;
                }
                visit(perm);
            }
            break;
        case SymmetryKind::trivial:
            visit(perm);
            break;
    }
}

std::string to_string(SymmetryKind kind) {
    switch (kind) {
        case SymmetryKind::full_permutation:
            return "S_n";
        case SymmetryKind::cyclic:
            return "C_n";
        case SymmetryKind::trivial:
            return "trivial";
    }
    return "?";
}

GeneratorOrbit orbit(const PauliString &generator, const SymmetryGroup &group) {
    if (generator.num_qubits() != group.n) {
        throw std::invalid_argument(
            "generator has " + std::to_string(generator.num_qubits()) + " qubits but the group acts on " +
            std::to_string(group.n));
    }
    std::vector<PauliString> images;
    group.for_each_element([&](std::span<const size_t> perm) {
        images.push_back(generator.permuted(perm));
    });
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());

    GeneratorOrbit out;
    out.generator = generator;
    out.group = group;
    out.multiplicity = group.order() / images.size();
    out.elements = std::move(images);
    return out;
}

}  // namespace permqc
