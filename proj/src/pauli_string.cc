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

#include "rbsv/pauli_string.h"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace rbsv {

namespace {

size_t words_for(size_t num_qubits) {
    return (num_qubits + 63) / 64;
}

void require_same_size(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "Pauli string size mismatch: " + std::to_string(a.num_qubits()) + " vs " +
            std::to_string(b.num_qubits()));
    }
}

}  // namespace

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
}

PauliString PauliString::from_str(std::string_view text) {
    uint8_t phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        if (text[0] == '-') {
            phase = 2;
        }
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        phase = (phase + 1) & 3;
        text.remove_prefix(1);
    }
    PauliString result(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                result.set_x(q, true);
                break;
            case 'Y':
                result.set_x(q, true);
                result.set_z(q, true);
                break;
            case 'Z':
                result.set_z(q, true);
                break;
            default:
                throw std::invalid_argument("bad Pauli character '" + std::string(1, text[q]) + "'");
        }
    }
    result.phase_ = phase;
    return result;
}

PauliString PauliString::random(size_t num_qubits, std::mt19937_64 &rng) {
    PauliString result(num_qubits);
    for (size_t w = 0; w < result.num_words(); w++) {
        result.xs_[w] = rng();
        result.zs_[w] = rng();
    }
    size_t tail = num_qubits & 63;
    if (tail != 0) {
        uint64_t mask = (uint64_t{1} << tail) - 1;
        result.xs_.back() &= mask;
        result.zs_.back() &= mask;
    }
    return result;
}

void PauliString::set_x(size_t q, bool v) {
    uint64_t bit = uint64_t{1} << (q & 63);
    if (v) {
        xs_[q >> 6] |= bit;
    } else {
        xs_[q >> 6] &= ~bit;
    }
}

void PauliString::set_z(size_t q, bool v) {
    uint64_t bit = uint64_t{1} << (q & 63);
    if (v) {
        zs_[q >> 6] |= bit;
    } else {
        zs_[q >> 6] &= ~bit;
    }
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

bool PauliString::is_identity_up_to_phase() const {
    for (size_t w = 0; w < xs_.size(); w++) {
        if (xs_[w] | zs_[w]) {
            return false;
        }
    }
    return true;
}

bool PauliString::commutes(const PauliString &other) const {
    require_same_size(*this, other);
    uint64_t parity = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        parity ^= (xs_[w] & other.zs_[w]) ^ (zs_[w] & other.xs_[w]);
    }
    return std::popcount(parity) % 2 == 0;
}

bool PauliString::equal_up_to_phase(const PauliString &other) const {
    return num_qubits_ == other.num_qubits_ && xs_ == other.xs_ && zs_ == other.zs_;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    require_same_size(*this, rhs);
    // Per qubit, sigma_a * sigma_b = i^g sigma_{a^b} where g = +1 for the
    // cyclic products XY, YZ, ZX and -1 for the anticyclic ones.
    int g = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        uint64_t ax = xs_[w], az = zs_[w], bx = rhs.xs_[w], bz = rhs.zs_[w];
        uint64_t a_x = ax & ~az, a_y = ax & az, a_z = ~ax & az;
        uint64_t b_x = bx & ~bz, b_y = bx & bz, b_z = ~bx & bz;
        uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
        uint64_t minus = (a_x & b_z) | (a_y & b_x) | (a_z & b_y);
        g += std::popcount(plus) - std::popcount(minus);
        xs_[w] = ax ^ bx;
        zs_[w] = az ^ bz;
    }
    phase_ = static_cast<uint8_t>(((phase_ + rhs.phase_ + g) % 4 + 4) % 4);
    return *this;
}

PauliString PauliString::operator*(const PauliString &rhs) const {
    PauliString out = *this;
    out *= rhs;
    return out;
}

void PauliString::xor_bits(const PauliString &rhs) {
    require_same_size(*this, rhs);
    for (size_t w = 0; w < xs_.size(); w++) {
        xs_[w] ^= rhs.xs_[w];
        zs_[w] ^= rhs.zs_[w];
    }
}

bool PauliString::operator==(const PauliString &other) const {
    return phase_ == other.phase_ && equal_up_to_phase(other);
}

Matrix PauliString::to_matrix() const {
    Matrix out = Matrix::Identity(1, 1);
    for (size_t q = 0; q < num_qubits_; q++) {
        const bool px = x(q), pz = z(q);
        out = kron(out, px ? (pz ? mat_y() : mat_x()) : (pz ? mat_z() : mat_i()));
    }
    static const Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return powers[phase_] * out;
}

std::string PauliString::str() const {
    static const char *prefixes[4] = {"+", "+i", "-", "-i"};
    std::string out = prefixes[phase_];
    for (size_t q = 0; q < num_qubits_; q++) {
        out.push_back("IXZY"[x(q) | (z(q) << 1)]);
    }
    return out;
}

PauliString pauli_from_matrix(const Matrix &m, double tolerance) {
    const Eigen::Index d = m.rows();
    if (d != m.cols() || d == 0 || (d & (d - 1)) != 0) {
        throw std::invalid_argument("pauli_from_matrix needs a square 2^n matrix");
    }
    size_t n = 0;
    while ((Eigen::Index{1} << n) < d) {
        n++;
    }
    // The X part is read off the support of column 0; the Z part from the
    // diagonal of X^x * M.
    Eigen::Index row = 0;
    m.col(0).cwiseAbs().maxCoeff(&row);
    PauliString result(n);
    for (size_t q = 0; q < n; q++) {
        result.set_x(q, (row >> (n - 1 - q)) & 1);
    }
    PauliString xpart = result;
    Matrix diag = xpart.to_matrix() * m;
    Complex c = diag(0, 0);
    for (size_t q = 0; q < n; q++) {
        Complex v = diag(Eigen::Index{1} << (n - 1 - q), Eigen::Index{1} << (n - 1 - q));
        result.set_z(q, std::real(v / c) < 0);
    }
    size_t num_y = 0;
    for (size_t q = 0; q < n; q++) {
        num_y += result.x(q) && result.z(q);
    }
    // X^x Z^z = i^{-#Y} * sigma, so M = c * i^{-#Y} * sigma.
    double angle = std::arg(c) / (M_PI / 2);
    long k = std::lround(angle);
    result.set_phase(static_cast<uint8_t>(((k - static_cast<long>(num_y)) % 4 + 4) % 4));
    if ((result.to_matrix() - m).cwiseAbs().maxCoeff() > tolerance) {
        throw std::invalid_argument("matrix is not a phased Pauli operator");
    }
    return result;
}

std::ostream &operator<<(std::ostream &out, const PauliString &p) {
    return out << p.str();
}

}  // namespace rbsv
