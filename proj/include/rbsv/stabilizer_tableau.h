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

#ifndef RBSV_STABILIZER_TABLEAU_H
#define RBSV_STABILIZER_TABLEAU_H

#include <random>
#include <vector>

#include "rbsv/clifford.h"
#include "rbsv/generator_gate.h"
#include "rbsv/pauli_string.h"

namespace rbsv {

/// Aaronson-Gottesman state tableau: n destabilizer rows followed by n
/// stabilizer rows, each a signed Pauli string.
class StabilizerTableau {
   public:
    /// Tableau of |0...0>.
    explicit StabilizerTableau(size_t num_qubits);
    /// Tableau of C|0...0>.
    explicit StabilizerTableau(const CliffordElement &c);

    size_t num_qubits() const {
        return stabilizers_.size();
    }
    const std::vector<PauliString> &stabilizers() const {
        return stabilizers_;
    }
    const std::vector<PauliString> &destabilizers() const {
        return destabilizers_;
    }

    /// Gottesman-Knill update s <- U s U^dagger on every row. Touches O(n) bits.
    void apply(const GeneratorGate &gate);
    /// Stabilizer rows commute pairwise, destabilizer i anticommutes with
    /// stabilizer j exactly when i == j, and destabilizers commute pairwise.
    bool is_valid() const;

   private:
    std::vector<PauliString> destabilizers_;
    std::vector<PauliString> stabilizers_;
};

/// The stabilizer group of a stabilizer state, held as its n generators.
/// Group element `mask` is the ordered product of the generators selected by
/// the bits of mask.
class StabilizerGroup {
   public:
    explicit StabilizerGroup(std::vector<PauliString> generators);
    static StabilizerGroup of(const CliffordElement &c);

    size_t num_qubits() const {
        return generators_.empty() ? 0 : generators_[0].num_qubits();
    }
    const std::vector<PauliString> &generators() const {
        return generators_;
    }

    /// Product of the generators picked out by `selection` (one flag per
    /// generator).
    PauliString element(const std::vector<bool> &selection) const;
    /// Uniform random group element, optionally excluding the identity.
    PauliString sample(std::mt19937_64 &rng, bool include_identity = true) const;
    /// All 2^n elements; refused above `max_materialized_qubits` qubits.
    std::vector<PauliString> elements() const;

    static constexpr size_t max_materialized_qubits = 12;

   private:
    std::vector<PauliString> generators_;
};

/// All 2^n stabilizers of C|0...0>, phases included (n <= 12).
std::vector<PauliString> stabilizer_group(const CliffordElement &c);

}  // namespace rbsv

#endif
