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

#include "rbsv/clifford.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rbsv {

namespace {

void require_same_size(const CliffordElement &a, const CliffordElement &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("Clifford size mismatch");
    }
}

// Uniform nonzero (or arbitrary) combination of the basis vectors.
PauliString random_combination(const std::vector<PauliString> &basis, size_t num_qubits, std::mt19937_64 &rng,
                               bool require_nonzero) {
    std::bernoulli_distribution coin(0.5);
    while (true) {
        PauliString v(num_qubits);
        bool any = false;
        for (const auto &b : basis) {
            if (coin(rng)) {
                v.xor_bits(b);
                any = true;
            }
        }
        if (!require_nonzero || any) {
            return v;
        }
    }
}

bool symplectic_product(const PauliString &a, const PauliString &b) {
    return !a.commutes(b);
}

// Projects `u` onto the symplectic complement of span(v, w), where <v,w> = 1.
void project_out(PauliString &u, const PauliString &v, const PauliString &w) {
    const bool uw = symplectic_product(u, w);
    const bool uv = symplectic_product(u, v);
    if (uw) {
        u.xor_bits(v);
    }
    if (uv) {
        u.xor_bits(w);
    }
}

}  // namespace

CliffordElement CliffordElement::identity(size_t num_qubits) {
    CliffordElement c;
    c.x_images_.reserve(num_qubits);
    c.z_images_.reserve(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        PauliString x(num_qubits), z(num_qubits);
        x.set_x(q, true);
        z.set_z(q, true);
        c.x_images_.push_back(std::move(x));
        c.z_images_.push_back(std::move(z));
    }
    return c;
}

CliffordElement CliffordElement::from_gate(const GeneratorGate &gate, size_t num_qubits) {
    gate.validate(num_qubits);
    CliffordElement c = identity(num_qubits);
    c.apply(gate);
    return c;
}

CliffordElement CliffordElement::from_gates(const std::vector<GeneratorGate> &gates, size_t num_qubits) {
    CliffordElement c = identity(num_qubits);
    for (const auto &g : gates) {
        g.validate(num_qubits);
        c.apply(g);
    }
    return c;
}

CliffordElement CliffordElement::from_images(std::vector<PauliString> x_images, std::vector<PauliString> z_images) {
    if (x_images.size() != z_images.size()) {
        throw std::invalid_argument("need one X image and one Z image per qubit");
    }
    CliffordElement c;
    c.x_images_ = std::move(x_images);
    c.z_images_ = std::move(z_images);
    for (size_t q = 0; q < c.num_qubits(); q++) {
        if (c.x_images_[q].num_qubits() != c.num_qubits() || c.z_images_[q].num_qubits() != c.num_qubits()) {
            throw std::invalid_argument("image size does not match qubit count");
        }
    }
    if (!c.is_valid()) {
        throw std::invalid_argument("images violate the Clifford commutation relations");
    }
    return c;
}

CliffordElement CliffordElement::from_unitary(const Matrix &u) {
    const Eigen::Index d = u.rows();
    if (d != u.cols() || d < 2 || (d & (d - 1)) != 0 || d > 64) {
        throw std::invalid_argument("from_unitary needs a square 2^n matrix with n <= 6");
    }
    if (!is_unitary(u, 1e-9)) {
        throw std::invalid_argument("matrix is not unitary");
    }
    size_t n = 0;
    while ((Eigen::Index{1} << n) < d) {
        n++;
    }
    std::vector<PauliString> xs, zs;
    for (size_t q = 0; q < n; q++) {
        PauliString x(n), z(n);
        x.set_x(q, true);
        z.set_z(q, true);
        xs.push_back(pauli_from_matrix(u * x.to_matrix() * u.adjoint()));
        zs.push_back(pauli_from_matrix(u * z.to_matrix() * u.adjoint()));
    }
    return from_images(std::move(xs), std::move(zs));
}

PauliString CliffordElement::conjugate(const PauliString &s) const {
    if (s.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli size does not match Clifford size");
    }
    // s = i^{phase + #Y} * prod_q X_q^{x_q} Z_q^{z_q}.
    size_t num_y = 0;
    for (size_t w = 0; w < s.num_words(); w++) {
        num_y += std::popcount(s.x_words()[w] & s.z_words()[w]);
    }
    PauliString acc(num_qubits());
    acc.set_phase(static_cast<uint8_t>((s.phase() + num_y) & 3));
    for (size_t q = 0; q < num_qubits(); q++) {
        if (s.x(q)) {
            acc *= x_images_[q];
        }
        if (s.z(q)) {
            acc *= z_images_[q];
        }
    }
    return acc;
}

PauliString CliffordElement::conjugate_bits(const PauliString &s) const {
    if (s.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli size does not match Clifford size");
    }
    PauliString acc(num_qubits());
    for (size_t q = 0; q < num_qubits(); q++) {
        if (s.x(q)) {
            acc.xor_bits(x_images_[q]);
        }
        if (s.z(q)) {
            acc.xor_bits(z_images_[q]);
        }
    }
    return acc;
}

void CliffordElement::apply(const GeneratorGate &gate) {
    gate.validate(num_qubits());
    for (auto &p : x_images_) {
        gate.conjugate(p);
    }
    for (auto &p : z_images_) {
        gate.conjugate(p);
    }
}

bool CliffordElement::is_valid() const {
    const size_t n = num_qubits();
    for (size_t i = 0; i < n; i++) {
        if (!x_images_[i].is_hermitian() || !z_images_[i].is_hermitian()) {
            return false;
        }
        for (size_t j = 0; j < n; j++) {
            if (!x_images_[i].commutes(x_images_[j]) || !z_images_[i].commutes(z_images_[j])) {
                return false;
            }
            if (x_images_[i].commutes(z_images_[j]) != (i != j)) {
                return false;
            }
        }
    }
    return true;
}

bool CliffordElement::is_identity() const {
    return *this == identity(num_qubits());
}

bool CliffordElement::operator==(const CliffordElement &other) const {
    return x_images_ == other.x_images_ && z_images_ == other.z_images_;
}

CliffordElement compose(const CliffordElement &first, const CliffordElement &second) {
    require_same_size(first, second);
    std::vector<PauliString> xs, zs;
    xs.reserve(first.num_qubits());
    zs.reserve(first.num_qubits());
    for (size_t q = 0; q < first.num_qubits(); q++) {
        xs.push_back(second.conjugate(first.x_image(q)));
        zs.push_back(second.conjugate(first.z_image(q)));
    }
    return CliffordElement::from_images(std::move(xs), std::move(zs));
}

CliffordElement inverse(const CliffordElement &c) {
    const size_t n = c.num_qubits();
    // Symplectic inverse M^{-1} = Omega M^T Omega, read off bit by bit.
    std::vector<PauliString> xs(n, PauliString(n)), zs(n, PauliString(n));
    for (size_t j = 0; j < n; j++) {
        for (size_t i = 0; i < n; i++) {
            xs[j].set_x(i, c.z_image(i).z(j));
            xs[j].set_z(i, c.x_image(i).z(j));
            zs[j].set_x(i, c.z_image(i).x(j));
            zs[j].set_z(i, c.x_image(i).x(j));
        }
    }
    CliffordElement unsigned_inverse = CliffordElement::from_images(xs, zs);

    // unsigned_inverse * C acts as conjugation by some Pauli Q; undo it.
    CliffordElement residual = compose(c, unsigned_inverse);
    PauliString q(n);
    for (size_t i = 0; i < n; i++) {
        q.set_z(i, residual.x_image(i).is_negative());
        q.set_x(i, residual.z_image(i).is_negative());
    }
    for (size_t j = 0; j < n; j++) {
        if (!xs[j].commutes(q)) {
            xs[j].negate();
        }
        if (!zs[j].commutes(q)) {
            zs[j].negate();
        }
    }
    return CliffordElement::from_images(std::move(xs), std::move(zs));
}

CliffordElement random_clifford(size_t num_qubits, std::mt19937_64 &rng) {
    if (num_qubits == 0) {
        throw std::invalid_argument("random_clifford needs at least one qubit");
    }
    const size_t n = num_qubits;
    std::vector<PauliString> basis;
    basis.reserve(2 * n);
    for (size_t q = 0; q < n; q++) {
        PauliString x(n), z(n);
        x.set_x(q, true);
        z.set_z(q, true);
        basis.push_back(std::move(x));
        basis.push_back(std::move(z));
    }

    std::vector<PauliString> xs, zs;
    xs.reserve(n);
    zs.reserve(n);
    for (size_t k = 0; k < n; k++) {
        PauliString v = random_combination(basis, n, rng, true);
        PauliString w(n);
        do {
            w = random_combination(basis, n, rng, false);
        } while (!symplectic_product(v, w));

        // Symplectic Gram-Schmidt on the projected basis. The result depends
        // only on (v, w) and the previous basis, so distinct draws give
        // distinct matrices.
        std::vector<PauliString> pending;
        for (auto &u : basis) {
            project_out(u, v, w);
            if (!u.is_identity_up_to_phase()) {
                pending.push_back(std::move(u));
            }
        }
        std::vector<PauliString> next;
        while (!pending.empty()) {
            PauliString a = std::move(pending.front());
            pending.erase(pending.begin());
            auto partner = std::find_if(pending.begin(), pending.end(),
                                        [&](const PauliString &b) { return symplectic_product(a, b); });
            if (partner == pending.end()) {
                throw std::logic_error("symplectic basis degenerated");
            }
            PauliString b = std::move(*partner);
            pending.erase(partner);
            std::vector<PauliString> rest;
            for (auto &u : pending) {
                project_out(u, a, b);
                if (!u.is_identity_up_to_phase()) {
                    rest.push_back(std::move(u));
                }
            }
            pending = std::move(rest);
            next.push_back(std::move(a));
            next.push_back(std::move(b));
        }
        basis = std::move(next);
        xs.push_back(std::move(v));
        zs.push_back(std::move(w));
    }

    std::bernoulli_distribution coin(0.5);
    for (size_t q = 0; q < n; q++) {
        if (coin(rng)) {
            xs[q].negate();
        }
        if (coin(rng)) {
            zs[q].negate();
        }
    }
    return CliffordElement::from_images(std::move(xs), std::move(zs));
}

Matrix clifford_to_matrix(const CliffordElement &c) {
    const size_t n = c.num_qubits();
    if (n > 6) {
        throw std::invalid_argument("clifford_to_matrix supports at most 6 qubits");
    }
    const Eigen::Index d = Eigen::Index{1} << n;
    // C|0..0> is the joint +1 eigenvector of the Z images.
    Matrix projector = Matrix::Identity(d, d);
    for (size_t q = 0; q < n; q++) {
        projector = projector * (Matrix::Identity(d, d) + c.z_image(q).to_matrix()) * 0.5;
    }
    Eigen::Index best = 0;
    projector.colwise().norm().maxCoeff(&best);
    Vector psi0 = projector.col(best);
    psi0.normalize();

    std::vector<Matrix> x_mats;
    for (size_t q = 0; q < n; q++) {
        x_mats.push_back(c.x_image(q).to_matrix());
    }
    // C|b> = C X^b |0> = prod_q C(X_q)^{b_q} C|0>.
    Matrix u(d, d);
    for (Eigen::Index b = 0; b < d; b++) {
        Vector col = psi0;
        for (size_t q = n; q-- > 0;) {
            if ((b >> (n - 1 - q)) & 1) {
                col = x_mats[q] * col;
            }
        }
        u.col(b) = col;
    }
    return u;
}

}  // namespace rbsv
