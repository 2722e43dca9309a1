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

#ifndef RBSV_CLIFFORD_H
#define RBSV_CLIFFORD_H

#include <random>
#include <vector>

#include "rbsv/generator_gate.h"
#include "rbsv/linalg.h"
#include "rbsv/pauli_string.h"

namespace rbsv {

/// A Clifford unitary C (modulo global phase), stored as the images
/// C X_q C^dagger and C Z_q C^dagger of the single-qubit generators.
///
/// The images of Z_q are the stabilizer generators of C|0...0>, and the
/// images of X_q are the matching destabilizers.
class CliffordElement {
   public:
    CliffordElement() = default;
    static CliffordElement identity(size_t num_qubits);
    static CliffordElement from_gate(const GeneratorGate &gate, size_t num_qubits);
    static CliffordElement from_gates(const std::vector<GeneratorGate> &gates, size_t num_qubits);
    /// Builds the element from explicit images; throws std::invalid_argument
    /// if they are not Hermitian or violate the commutation relations.
    static CliffordElement from_images(std::vector<PauliString> x_images, std::vector<PauliString> z_images);
    /// Recovers the Clifford implemented by a dense unitary (n <= 6). Throws
    /// if the unitary does not map Paulis to Paulis.
    static CliffordElement from_unitary(const Matrix &u);

    size_t num_qubits() const {
        return x_images_.size();
    }
    const PauliString &x_image(size_t q) const {
        return x_images_[q];
    }
    const PauliString &z_image(size_t q) const {
        return z_images_[q];
    }

    /// C s C^dagger with exact phase. O(n^2 / 64) word operations.
    PauliString conjugate(const PauliString &s) const;
    /// Same Pauli factors as conjugate(s) with the phase left unspecified
    /// (set to zero). Used for Pauli-frame propagation.
    PauliString conjugate_bits(const PauliString &s) const;

    /// Appends a gate: the result applies this element, then `gate`.
    void apply(const GeneratorGate &gate);

    /// True when images are Hermitian and satisfy the symplectic relations.
    bool is_valid() const;
    bool is_identity() const;

    bool operator==(const CliffordElement &other) const;
    bool operator!=(const CliffordElement &other) const {
        return !(*this == other);
    }

   private:
    std::vector<PauliString> x_images_;
    std::vector<PauliString> z_images_;
};

/// Element that applies `first` and then `second` (unitary second * first).
CliffordElement compose(const CliffordElement &first, const CliffordElement &second);
CliffordElement inverse(const CliffordElement &c);

/// Exactly uniform over the n-qubit Clifford group modulo global phase.
///
/// A uniformly random symplectic matrix is drawn pair by pair: the image of
/// X_k is a uniform nonzero vector of the current symplectic subspace, the
/// image of Z_k is uniform among vectors with symplectic product 1 against
/// it, and the procedure recurses into their symplectic complement. Signs of
/// the 2n images are then drawn uniformly.
CliffordElement random_clifford(size_t num_qubits, std::mt19937_64 &rng);

/// Dense unitary agreeing with the element up to a global phase (n <= 6).
Matrix clifford_to_matrix(const CliffordElement &c);

}  // namespace rbsv

#endif
