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

#ifndef RBSV_PAULI_STRING_H
#define RBSV_PAULI_STRING_H

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rbsv/linalg.h"

namespace rbsv {

/// An n-qubit Pauli operator i^phase * P_0 ⊗ ... ⊗ P_{n-1}.
///
/// Qubit q carries X if x(q), Z if z(q), and Y if both. The single-qubit
/// factor for x=z=1 is the Hermitian Y = iXZ, so the operator is Hermitian
/// exactly when the phase exponent is even.
///
/// Bits are packed into 64-bit words; bits beyond num_qubits are always zero.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses strings like "XI", "+ZZ", "-YX", "iXZ", "-iII". Underscores are
    /// accepted as identity.
    static PauliString from_str(std::string_view text);
    /// Uniformly random Pauli (including identity) with phase +1.
    static PauliString random(size_t num_qubits, std::mt19937_64 &rng);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_words() const {
        return xs_.size();
    }

    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);

    /// Exponent k of the prefactor i^k, in {0,1,2,3}.
    uint8_t phase() const {
        return phase_;
    }
    void set_phase(uint8_t k) {
        phase_ = k & 3;
    }
    void negate() {
        phase_ = (phase_ + 2) & 3;
    }
    bool is_hermitian() const {
        return (phase_ & 1) == 0;
    }
    bool is_negative() const {
        return phase_ == 2;
    }

    const std::vector<uint64_t> &x_words() const {
        return xs_;
    }
    const std::vector<uint64_t> &z_words() const {
        return zs_;
    }
    std::vector<uint64_t> &x_words() {
        return xs_;
    }
    std::vector<uint64_t> &z_words() {
        return zs_;
    }

    /// Number of qubits acted on by a non-identity factor.
    size_t weight() const;
    bool is_identity_up_to_phase() const;
    bool commutes(const PauliString &other) const;
    /// Same Pauli factors, ignoring the phase.
    bool equal_up_to_phase(const PauliString &other) const;

    /// Exact product this * rhs, phase included.
    PauliString operator*(const PauliString &rhs) const;
    PauliString &operator*=(const PauliString &rhs);
    /// Product of the Pauli factors with the phase bookkeeping dropped.
    void xor_bits(const PauliString &rhs);

    bool operator==(const PauliString &other) const;
    bool operator!=(const PauliString &other) const {
        return !(*this == other);
    }

    /// Dense 2^n x 2^n matrix. Qubit 0 is the leftmost tensor factor.
    Matrix to_matrix() const;
    std::string str() const;

   private:
    size_t num_qubits_ = 0;
    uint8_t phase_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

/// Returns the Pauli string P with matrix equal to `m`, or throws
/// std::invalid_argument if `m` is not a phased Pauli operator.
PauliString pauli_from_matrix(const Matrix &m, double tolerance = 1e-9);

std::ostream &operator<<(std::ostream &out, const PauliString &p);

}  // namespace rbsv

#endif
