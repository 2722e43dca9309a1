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

#ifndef RBSV_NOISE_H
#define RBSV_NOISE_H

#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rbsv/linalg.h"
#include "rbsv/pauli_string.h"

namespace rbsv {

struct Ideal {};

/// rho -> (1 - epsilon) rho + epsilon I/d.
struct Depolarizing {
    double epsilon = 0;
};

/// rho -> sum_k p_k P_k rho P_k. Keys are Hermitian Pauli strings with
/// phase +1; probabilities sum to one.
struct PauliChannel {
    std::vector<PauliString> paulis;
    std::vector<double> probabilities;

    /// Builds from string keys such as {"II": 0.9, "XZ": 0.1}.
    static PauliChannel from_table(const std::map<std::string, double> &table);
};

/// rho -> (1 - delta) (p' rho + (1 - p') I/d) + delta U rho U^dagger.
/// An empty `perturbation` stands for U = I.
struct DeltaDepolarizing {
    double delta = 0;
    double p_prime = 1;
    Matrix perturbation;
};

using NoiseChannel = std::variant<Ideal, Depolarizing, PauliChannel, DeltaDepolarizing>;

/// exp(-i angle/2 sigma_axis) on qubit 0 of an n-qubit register. `axis` is one
/// of 'x', 'y', 'z'.
Matrix rotation_perturbation(size_t num_qubits, char axis, double angle);

/// Throws std::invalid_argument on out-of-range parameters or a size mismatch.
void validate_channel(const NoiseChannel &ch, size_t num_qubits);
bool is_pauli_diagonal(const NoiseChannel &ch);
std::string channel_name(const NoiseChannel &ch);

struct SpamModel {
    NoiseChannel prep = Ideal{};
    NoiseChannel meas = Ideal{};
    /// Per-qubit X/Y/Z flip probability (each p_meas/3) on measured qubits.
    double p_meas = 0;

    void validate(size_t num_qubits) const;
};

/// A validated d x d density matrix.
class DensityMatrix {
   public:
    /// Throws if `m` is not Hermitian (1e-12), trace one (1e-12), and
    /// positive semidefinite (-1e-10).
    explicit DensityMatrix(Matrix m);
    static DensityMatrix zero_state(size_t num_qubits);
    static DensityMatrix maximally_mixed(size_t num_qubits);
    static DensityMatrix pure(const Vector &psi);

    const Matrix &matrix() const {
        return m_;
    }
    size_t num_qubits() const;
    Eigen::Index dim() const {
        return m_.rows();
    }
    /// <psi|rho|psi>.
    double fidelity_with(const Vector &psi) const;

   private:
    Matrix m_;
};

/// A linear map on d x d matrices, used for channels that are not one of the
/// built-in variants (twirled channels, compositions).
using LinearMap = std::function<Matrix(const Matrix &)>;

/// Applies the channel linearly; no validation of the input, so it also
/// accepts the matrix units used to build Choi matrices.
Matrix apply_linear(const NoiseChannel &ch, const Matrix &m);
DensityMatrix apply_channel(const NoiseChannel &ch, const DensityMatrix &rho);
LinearMap as_map(const NoiseChannel &ch);

/// J = sum_ij E_ij (x) map(E_ij).
Matrix choi_matrix(const LinearMap &map, Eigen::Index dim);
/// Choi eigenvalues >= -1e-10 and Tr map(E_ij) = delta_ij within 1e-12.
bool is_cptp(const LinearMap &map, Eigen::Index dim);
/// (1/d^2) sum_ij map(E_ij)_ij.
double entanglement_fidelity(const LinearMap &map, Eigen::Index dim);
double average_fidelity(const LinearMap &map, Eigen::Index dim);
/// p = (d F_avg - 1)/(d - 1).
double depolarizing_parameter(const LinearMap &map, Eigen::Index dim);
double depolarizing_parameter(const NoiseChannel &ch, size_t num_qubits);

struct TwirlEstimate {
    Matrix mean_choi;
    /// Standard error of mean_choi in Frobenius norm.
    double choi_standard_error = 0;
    size_t samples = 0;
};

/// Monte Carlo Clifford twirl: averages the Choi matrix of C^dagger map(C . C^dagger) C
/// over `samples` uniform Cliffords.
TwirlEstimate monte_carlo_twirl(const LinearMap &map, size_t num_qubits, size_t samples, std::mt19937_64 &rng);

/// The channel cannot be unravelled into Pauli faults.
class UnsupportedForTrajectory : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Precomputed sampler for a Pauli-diagonal channel.
class FaultSampler {
   public:
    FaultSampler() = default;
    /// Throws UnsupportedForTrajectory for a nontrivial DeltaDepolarizing.
    FaultSampler(const NoiseChannel &ch, size_t num_qubits);

    bool is_trivial() const {
        return kind_ == Kind::None;
    }
    /// XORs a sampled fault into the bit words (phase is not tracked).
    template <typename Rng>
    void sample_into(Rng &rng, uint64_t *xs, uint64_t *zs) const;
    PauliString sample(std::mt19937_64 &rng) const;

   private:
    enum class Kind { None, Uniform, Table };
    Kind kind_ = Kind::None;
    size_t num_qubits_ = 0;
    double epsilon_ = 0;
    std::vector<double> cumulative_;
    std::vector<PauliString> faults_;
};

/// Draws one Pauli fault with the channel's exact probabilities.
PauliString sample_pauli_fault(const NoiseChannel &ch, size_t num_qubits, std::mt19937_64 &rng);

/// Applies independent X/Y/Z flips (each p/3) to the listed qubits.
Matrix apply_measurement_flips(const Matrix &rho, const std::vector<size_t> &qubits, double p_meas);

/// Tr((I + s)/2 . flips(meas(rho))) with flips on the qubits s touches.
double measurement_success_probability(const DensityMatrix &rho, const PauliString &s, const SpamModel &spam);

template <typename Rng>
void FaultSampler::sample_into(Rng &rng, uint64_t *xs, uint64_t *zs) const {
    switch (kind_) {
        case Kind::None:
            return;
        case Kind::Uniform: {
            if (std::uniform_real_distribution<double>(0, 1)(rng) >= epsilon_) {
                return;
            }
            const size_t words = (num_qubits_ + 63) / 64;
            for (size_t w = 0; w < words; w++) {
                uint64_t mask = ~uint64_t{0};
                if (w + 1 == words && (num_qubits_ & 63) != 0) {
                    mask = (uint64_t{1} << (num_qubits_ & 63)) - 1;
                }
                xs[w] ^= rng() & mask;
                zs[w] ^= rng() & mask;
            }
            return;
        }
        case Kind::Table: {
            const double u = std::uniform_real_distribution<double>(0, 1)(rng);
            size_t k = 0;
            while (k + 1 < cumulative_.size() && u >= cumulative_[k]) {
                k++;
            }
            const auto &f = faults_[k];
            for (size_t w = 0; w < f.num_words(); w++) {
                xs[w] ^= f.x_words()[w];
                zs[w] ^= f.z_words()[w];
            }
            return;
        }
    }
}

}  // namespace rbsv

#endif
