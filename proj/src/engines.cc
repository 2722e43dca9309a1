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

#include "rbsv/engines.h"

#include <bit>
#include <stdexcept>

namespace rbsv {

namespace {

uint64_t bit_mask(size_t q) {
    return uint64_t{1} << (q & 63);
}

}  // namespace

void SequenceSpec::validate() const {
    if (num_qubits == 0) {
        throw std::invalid_argument("sequence needs at least one qubit");
    }
    for (const auto &e : elements) {
        if (e.element.num_qubits() != num_qubits) {
            throw std::invalid_argument("sequence element size does not match the register");
        }
        for (const auto &ch : e.noise) {
            validate_channel(ch, num_qubits);
        }
    }
    spam.validate(num_qubits);
}

CliffordElement SequenceSpec::ideal_product() const {
    CliffordElement acc = CliffordElement::identity(num_qubits);
    for (const auto &e : elements) {
        acc = compose(acc, e.element);
    }
    return acc;
}

DensityMatrix run_sequence_exact(const SequenceSpec &spec, bool validate_steps) {
    spec.validate();
    if (spec.num_qubits > kMaxExactQubits) {
        throw std::invalid_argument("exact engine supports at most " + std::to_string(kMaxExactQubits) +
                                    " qubits; use the trajectory engine for larger registers");
    }
    Matrix rho = apply_linear(spec.spam.prep, DensityMatrix::zero_state(spec.num_qubits).matrix());
    for (const auto &e : spec.elements) {
        Matrix u = clifford_to_matrix(e.element);
        rho = u * rho * u.adjoint();
        for (const auto &ch : e.noise) {
            rho = apply_linear(ch, rho);
        }
        if (validate_steps) {
            DensityMatrix check(rho);
        }
    }
    // Symmetrize away rounding drift before the invariant check.
    Matrix hermitian = (rho + rho.adjoint()) * 0.5;
    return DensityMatrix(std::move(hermitian));
}

Vector ideal_state(const SequenceSpec &spec) {
    const Eigen::Index d = Eigen::Index{1} << spec.num_qubits;
    Vector psi = Vector::Zero(d);
    psi(0) = 1;
    for (const auto &e : spec.elements) {
        psi = clifford_to_matrix(e.element) * psi;
    }
    return psi;
}

double survival_probability(const DensityMatrix &rho, const SpamModel &spam) {
    Matrix m = apply_linear(spam.meas, rho.matrix());
    std::vector<size_t> all(rho.num_qubits());
    for (size_t q = 0; q < all.size(); q++) {
        all[q] = q;
    }
    m = apply_measurement_flips(m, all, spam.p_meas);
    return m(0, 0).real();
}

FrameSimulator::FrameSimulator(const SequenceSpec &spec)
    : num_qubits_(spec.num_qubits), words_((spec.num_qubits + 63) / 64) {
    spec.validate();
    const size_t n = num_qubits_;
    images_.assign(spec.elements.size() * 2 * n * 2 * words_, 0);
    noise_.reserve(spec.elements.size());
    for (size_t e = 0; e < spec.elements.size(); e++) {
        const auto &c = spec.elements[e].element;
        for (size_t q = 0; q < n; q++) {
            for (size_t b = 0; b < 2; b++) {
                const PauliString &img = b == 0 ? c.x_image(q) : c.z_image(q);
                uint64_t *dst = &images_[((e * 2 * n) + 2 * q + b) * 2 * words_];
                for (size_t w = 0; w < words_; w++) {
                    dst[w] = img.x_words()[w];
                    dst[words_ + w] = img.z_words()[w];
                }
            }
        }
        std::vector<FaultSampler> samplers;
        for (const auto &ch : spec.elements[e].noise) {
            samplers.emplace_back(ch, n);
        }
        noise_.push_back(std::move(samplers));
    }
    prep_ = FaultSampler(spec.spam.prep, n);
    meas_ = FaultSampler(spec.spam.meas, n);
    p_meas_ = spec.spam.p_meas;
    CliffordElement product = spec.ideal_product();
    for (size_t q = 0; q < n; q++) {
        final_stabilizers_.push_back(product.z_image(q));
    }
    fx_.assign(words_, 0);
    fz_.assign(words_, 0);
    tx_.assign(words_, 0);
    tz_.assign(words_, 0);
}

void FrameSimulator::sample_frame(std::mt19937_64 &rng) {
    const size_t n = num_qubits_;
    std::fill(fx_.begin(), fx_.end(), 0);
    std::fill(fz_.begin(), fz_.end(), 0);
    prep_.sample_into(rng, fx_.data(), fz_.data());
    for (size_t e = 0; e < noise_.size(); e++) {
        std::fill(tx_.begin(), tx_.end(), 0);
        std::fill(tz_.begin(), tz_.end(), 0);
        const uint64_t *base = &images_[e * 2 * n * 2 * words_];
        for (size_t w = 0; w < words_; w++) {
            for (uint64_t bits = fx_[w] | fz_[w]; bits != 0; bits &= bits - 1) {
                const size_t q = 64 * w + static_cast<size_t>(std::countr_zero(bits));
                const uint64_t m = bit_mask(q);
                for (size_t b = 0; b < 2; b++) {
                    if (((b == 0 ? fx_[w] : fz_[w]) & m) == 0) {
                        continue;
                    }
                    const uint64_t *img = base + (2 * q + b) * 2 * words_;
                    for (size_t v = 0; v < words_; v++) {
                        tx_[v] ^= img[v];
                        tz_[v] ^= img[words_ + v];
                    }
                }
            }
        }
        fx_.swap(tx_);
        fz_.swap(tz_);
        for (const auto &s : noise_[e]) {
            s.sample_into(rng, fx_.data(), fz_.data());
        }
    }
    meas_.sample_into(rng, fx_.data(), fz_.data());
}

bool FrameSimulator::accept_stabilizer_bits(const uint64_t *sx, const uint64_t *sz, std::mt19937_64 &rng) const {
    size_t anticommuting = 0;
    for (size_t w = 0; w < words_; w++) {
        anticommuting += static_cast<size_t>(std::popcount((fx_[w] & sz[w]) ^ (fz_[w] & sx[w])));
    }
    bool outcome_flipped = (anticommuting & 1) != 0;
    if (p_meas_ > 0) {
        std::uniform_real_distribution<double> unit(0, 1);
        for (size_t w = 0; w < words_; w++) {
            for (uint64_t bits = sx[w] | sz[w]; bits != 0; bits &= bits - 1) {
                const uint64_t m = bits & (~bits + 1);
                if (unit(rng) >= p_meas_) {
                    continue;
                }
                // Flip Pauli: 0 -> X, 1 -> Y, 2 -> Z.
                const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
                const bool fx = kind != 2, fz = kind != 0;
                const bool px = (sx[w] & m) != 0, pz = (sz[w] & m) != 0;
                outcome_flipped ^= (fx && pz) != (fz && px);
            }
        }
    }
    return !outcome_flipped;
}

bool FrameSimulator::survived(std::mt19937_64 &rng) const {
    std::uniform_real_distribution<double> unit(0, 1);
    for (size_t q = 0; q < num_qubits_; q++) {
        bool bit = (fx_[q >> 6] & bit_mask(q)) != 0;
        if (p_meas_ > 0 && unit(rng) < p_meas_) {
            // X and Y flip a Z-basis outcome, Z does not.
            const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
            bit ^= kind != 2;
        }
        if (bit) {
            return false;
        }
    }
    return true;
}

PauliString FrameSimulator::frame() const {
    PauliString out(num_qubits_);
    for (size_t q = 0; q < num_qubits_; q++) {
        out.set_x(q, (fx_[q >> 6] & bit_mask(q)) != 0);
        out.set_z(q, (fz_[q >> 6] & bit_mask(q)) != 0);
    }
    return out;
}

int stabilizer_sign(const CliffordElement &c, const PauliString &s) {
    if (s.num_qubits() != c.num_qubits()) {
        throw std::invalid_argument("Pauli size does not match Clifford size");
    }
    PauliString product(c.num_qubits());
    for (size_t k = 0; k < c.num_qubits(); k++) {
        if (!s.commutes(c.z_image(k))) {
            return 0;
        }
        // Coefficient of generator k is read off the paired destabilizer.
        if (!s.commutes(c.x_image(k))) {
            product *= c.z_image(k);
        }
    }
    if (!product.equal_up_to_phase(s)) {
        throw std::logic_error("stabilizer decomposition failed");
    }
    return product.phase() == s.phase() ? 1 : -1;
}

TrajectoryOutcome run_sequence_trajectory(const SequenceSpec &spec, const PauliString &s, std::mt19937_64 &rng) {
    if (!s.is_hermitian()) {
        throw std::invalid_argument("measured Pauli " + s.str() + " is not Hermitian");
    }
    FrameSimulator sim(spec);
    const int sign = stabilizer_sign(spec.ideal_product(), s);
    sim.sample_frame(rng);
    TrajectoryOutcome out;
    out.measured_stabilizer = s;
    out.fault_record = sim.frame();
    if (s.is_identity_up_to_phase()) {
        out.accept = sign > 0;
        return out;
    }
    bool accept = sim.accept_stabilizer_bits(s.x_words().data(), s.z_words().data(), rng);
    if (sign < 0) {
        accept = !accept;
    } else if (sign == 0) {
        accept = std::bernoulli_distribution(0.5)(rng);
    }
    out.accept = accept;
    return out;
}

bool run_survival_trajectory(const SequenceSpec &spec, std::mt19937_64 &rng) {
    FrameSimulator sim(spec);
    sim.sample_frame(rng);
    return sim.survived(rng);
}

}  // namespace rbsv
