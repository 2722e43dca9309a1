// Copyright 2026 The RBSV Authors
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

#ifndef RBSV_GENERATOR_GATE_H
#define RBSV_GENERATOR_GATE_H

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rbsv/linalg.h"
#include "rbsv/pauli_string.h"

namespace rbsv {

enum class GateKind : uint8_t { H, P, PDAG, CNOT, X };

/// One Clifford generator gate. For CNOT, `q0` is the control.
struct GeneratorGate {
    GateKind kind;
    uint32_t q0;
    uint32_t q1 = 0;

    static GeneratorGate h(uint32_t q) {
        return {GateKind::H, q, 0};
    }
    static GeneratorGate p(uint32_t q) {
        return {GateKind::P, q, 0};
    }
    static GeneratorGate pdag(uint32_t q) {
        return {GateKind::PDAG, q, 0};
    }
    static GeneratorGate x(uint32_t q) {
        return {GateKind::X, q, 0};
    }
    static GeneratorGate cnot(uint32_t control, uint32_t target) {
        return {GateKind::CNOT, control, target};
    }

    bool is_two_qubit() const {
        return kind == GateKind::CNOT;
    }
    /// Throws std::invalid_argument when an index is out of range or a CNOT
    /// has equal control and target.
    void validate(size_t num_qubits) const;
    GeneratorGate inverse() const;

    /// Conjugates `p` in place: p <- G p G^dagger, phase included. O(1).
    void conjugate(PauliString &p) const;

    Matrix to_matrix(size_t num_qubits) const;
    std::string str() const;

    bool operator==(const GeneratorGate &other) const = default;
};

/// Parses the line-based circuit text format: `H 0`, `P 1`, `PDAG 0`,
/// `CNOT 0 1`, `X 1`. Everything after `#` is a comment.
std::vector<GeneratorGate> parse_circuit(std::string_view text);
std::string format_circuit(const std::vector<GeneratorGate> &gates);

/// All gate instances of the inversion-closed generating set
/// {H_i, P_i, P_i^dagger, CNOT_ij} on n qubits.
std::vector<GeneratorGate> generator_set(size_t num_qubits);

}  // namespace rbsv

#endif
