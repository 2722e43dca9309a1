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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "rbsv/clifford.h"
#include "rbsv/noise.h"
#include "rbsv/stabilizer_tableau.h"

using namespace rbsv;

namespace {

Matrix ket0_density(size_t n) {
    return DensityMatrix::zero_state(n).matrix();
}

Matrix random_density(size_t n, std::mt19937_64 &rng) {
    const Eigen::Index d = Eigen::Index{1} << n;
    std::normal_distribution<double> g;
    Matrix a(d, d);
    for (Eigen::Index r = 0; r < d; r++) {
        for (Eigen::Index c = 0; c < d; c++) {
            a(r, c) = Complex(g(rng), g(rng));
        }
    }
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

// An amplitude-damping channel on qubit 0, a non-unital test channel.
LinearMap amplitude_damping(size_t n, double gamma) {
    Matrix k0 = Matrix::Identity(2, 2);
    k0(1, 1) = std::sqrt(1 - gamma);
    Matrix k1 = Matrix::Zero(2, 2);
    k1(0, 1) = std::sqrt(gamma);
    const Matrix e0 = embed_single(k0, 0, n), e1 = embed_single(k1, 0, n);
    return [e0, e1](const Matrix &m) -> Matrix { return e0 * m * e0.adjoint() + e1 * m * e1.adjoint(); };
}

std::vector<NoiseChannel> sample_channels(size_t n) {
    return {Ideal{},
            Depolarizing{0.0},
            Depolarizing{0.3},
            Depolarizing{1.0},
            PauliChannel::from_table({{std::string(n, 'I'), 0.9}, {std::string(n, 'Z'), 0.05}, {"X" + std::string(n - 1, 'Y'), 0.05}}),
            DeltaDepolarizing{0.1, 0.95, {}},
            DeltaDepolarizing{0.2, 0.9, rotation_perturbation(n, 'x', 0.3)},
            DeltaDepolarizing{1.0, 0.5, rotation_perturbation(n, 'y', 1.1)}};
}

}  // namespace

TEST(noise, every_channel_is_cptp) {
    for (size_t n : {1, 2, 3}) {
        for (const auto &ch : sample_channels(n)) {
            EXPECT_TRUE(is_cptp(as_map(ch), Eigen::Index{1} << n)) << channel_name(ch) << " n=" << n;
        }
    }
}

TEST(noise, depolarizing_examples) {
    std::mt19937_64 rng(5);
    const Matrix rho = random_density(2, rng);
    EXPECT_LT((apply_linear(Depolarizing{0.0}, rho) - rho).cwiseAbs().maxCoeff(), 1e-15);
    const Matrix mixed = apply_linear(Depolarizing{1.0}, rho);
    EXPECT_LT((mixed - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(noise, pauli_channel_bit_flip_example) {
    const auto ch = PauliChannel::from_table({{"I", 0.9}, {"X", 0.1}});
    Matrix out = apply_channel(ch, DensityMatrix::zero_state(1)).matrix();
    Matrix want = Matrix::Zero(2, 2);
    want(0, 0) = 0.9;
    want(1, 1) = 0.1;
    EXPECT_LT((out - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(noise, invalid_parameters_rejected) {
    EXPECT_THROW(validate_channel(Depolarizing{-0.1}, 1), std::invalid_argument);
    EXPECT_THROW(validate_channel(Depolarizing{1.5}, 1), std::invalid_argument);
    EXPECT_THROW(validate_channel(PauliChannel::from_table({{"I", 0.5}, {"X", 0.4}}), 1), std::invalid_argument);
    EXPECT_THROW(validate_channel(PauliChannel::from_table({{"I", 0.5}, {"X", 0.5}}), 2), std::invalid_argument);
    EXPECT_THROW(validate_channel(DeltaDepolarizing{1.2, 0.5, {}}, 1), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST(noise, depolarizing_parameter_examples) {
    EXPECT_NEAR(depolarizing_parameter(Depolarizing{0.13}, 2), 0.87, 1e-12);
    EXPECT_NEAR(depolarizing_parameter(Ideal{}, 3), 1.0, 1e-12);
    // Pauli channel: F_ent = p_I and p = (d^2 p_I - 1)/(d^2 - 1).
    const auto ch = PauliChannel::from_table({{"II", 0.95}, {"ZZ", 0.05}});
    EXPECT_NEAR(depolarizing_parameter(ch, 2), (16 * 0.95 - 1) / 15, 1e-12);
}

TEST(noise, depolarizing_parameter_Monte_Carlo_twirl_cross_check) {
    const auto ch = PauliChannel::from_table({{"II", 0.95}, {"ZZ", 0.05}});
    std::mt19937_64 rng(11);
    const TwirlEstimate t = monte_carlo_twirl(as_map(ch), 2, 4000, rng);
    // Entanglement fidelity of the twirled channel: <Omega|J|Omega>/d^2.
    double overlap = 0;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            overlap += t.mean_choi(i * 4 + i, j * 4 + j).real();
        }
    }
    const double p_mc = (overlap - 1) / 15;
    EXPECT_NEAR(p_mc, depolarizing_parameter(ch, 2), 3 * t.choi_standard_error + 1e-12);
}

TEST(noise, composition_of_depolarizing_multiplies_p) {
    const auto a = as_map(Depolarizing{0.1}), b = as_map(Depolarizing{0.25});
    LinearMap ab = [&](const Matrix &m) { return a(b(m)); };
    for (Eigen::Index d : {2, 4, 8}) {
        EXPECT_NEAR(depolarizing_parameter(ab, d), 0.9 * 0.75, 1e-12);
    }
}

TEST(noise, delta_channel_reduces_to_depolarizing_without_perturbation) {
    std::mt19937_64 rng(3);
    const Matrix rho = random_density(2, rng);
    const Matrix a = apply_linear(DeltaDepolarizing{0.2, 0.9, {}}, rho);
    const Matrix b = apply_linear(Depolarizing{0.8 * 0.1}, rho);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
    // With a perturbation the channel leaves the Pauli-diagonal class.
    EXPECT_FALSE(is_pauli_diagonal(DeltaDepolarizing{0.2, 0.9, rotation_perturbation(2, 'z', 0.2)}));
    EXPECT_TRUE(is_pauli_diagonal(DeltaDepolarizing{0.2, 0.9, {}}));
}

TEST(noise, twirl_of_non_unital_channel_is_depolarizing) {
    for (size_t n : {1, 2}) {
        const LinearMap map = amplitude_damping(n, 0.3);
        std::mt19937_64 rng(17 + n);
        const TwirlEstimate t = monte_carlo_twirl(map, n, 3000, rng);
        const double p = depolarizing_parameter(map, Eigen::Index{1} << n);
        const Matrix target = choi_matrix(as_map(Depolarizing{1 - p}), Eigen::Index{1} << n);
        const double dist = (t.mean_choi - target).norm();
        EXPECT_LE(dist, 3 * t.choi_standard_error) << "n=" << n;
    }
}

TEST(noise, sample_pauli_fault_frequencies) {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 1000; k++) {
        EXPECT_TRUE(sample_pauli_fault(Depolarizing{0.0}, 2, rng).is_identity_up_to_phase());
    }
    const double eps = 0.2;
    const int draws = 100000;
    std::map<std::string, int> counts;
    for (int k = 0; k < draws; k++) {
        counts[sample_pauli_fault(Depolarizing{eps}, 1, rng).str()]++;
    }
    const double px = eps / 4;
    const double sigma = std::sqrt(px * (1 - px) / draws);
    EXPECT_NEAR(counts["+X"] / static_cast<double>(draws), px, 3 * sigma);
    EXPECT_NEAR(counts["+I"] / static_cast<double>(draws), 1 - 3 * eps / 4, 4 * sigma);

    const auto half = PauliChannel::from_table({{"I", 0.5}, {"X", 0.5}});
    int xs = 0;
    for (int k = 0; k < 20000; k++) {
        xs += sample_pauli_fault(half, 1, rng).x(0) ? 1 : 0;
    }
    EXPECT_NEAR(xs / 20000.0, 0.5, 3 * std::sqrt(0.25 / 20000));
    EXPECT_THROW(sample_pauli_fault(DeltaDepolarizing{0.1, 0.9, rotation_perturbation(1, 'x', 0.2)}, 1, rng),
                 UnsupportedForTrajectory);
}

TEST(noise, fault_sampling_reproduces_channel_in_expectation) {
    const auto ch = PauliChannel::from_table({{"II", 0.8}, {"XI", 0.1}, {"YZ", 0.1}});
    std::mt19937_64 rng(1234);
    Matrix rho = Matrix::Zero(4, 4);
    Matrix base = DensityMatrix::zero_state(2).matrix();
    const Matrix u = clifford_to_matrix(random_clifford(2, rng));
    base = u * base * u.adjoint();
    const int draws = 100000;
    for (int k = 0; k < draws; k++) {
        const Matrix f = sample_pauli_fault(ch, 2, rng).to_matrix();
        rho += f * base * f.adjoint();
    }
    rho /= static_cast<double>(draws);
    const Matrix exact = apply_linear(ch, base);
    // Each entry is an average of bounded terms; 3 sigma with sigma <= 0.5/sqrt(N).
    EXPECT_LT((rho - exact).cwiseAbs().maxCoeff(), 3 * 0.5 / std::sqrt(draws));
}

TEST(noise, measurement_success_examples) {
    std::mt19937_64 rng(8);
    const CliffordElement c = random_clifford(2, rng);
    const Matrix u = clifford_to_matrix(c);
    const DensityMatrix psi(u * ket0_density(2) * u.adjoint());
    for (const auto &s : stabilizer_group(c)) {
        EXPECT_NEAR(measurement_success_probability(psi, s, {}), 1.0, 1e-12) << s.str();
    }
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    EXPECT_NEAR(measurement_success_probability(mixed, PauliString::from_str("XZ"), {}), 0.5, 1e-12);

    SpamModel noisy;
    noisy.meas = Depolarizing{0.7};
    noisy.p_meas = 0.3;
    EXPECT_NEAR(measurement_success_probability(mixed, PauliString(2), noisy), 1.0, 1e-15);
    EXPECT_NEAR(measurement_success_probability(psi, PauliString(2), noisy), 1.0, 1e-15);

    PauliString bad = PauliString::from_str("XZ");
    bad.set_phase(1);
    EXPECT_THROW(measurement_success_probability(psi, bad, {}), std::invalid_argument);
}

TEST(noise, measurement_flips_touch_only_support) {
    // On |0><0| (x) |0><0| measuring Z on qubit 0 only: flips on qubit 0 with
    // X or Y (2/3 of p_meas) flip the outcome.
    SpamModel spam;
    spam.p_meas = 0.3;
    const DensityMatrix zero = DensityMatrix::zero_state(2);
    EXPECT_NEAR(measurement_success_probability(zero, PauliString::from_str("ZI"), spam), 1 - 0.2, 1e-12);
    EXPECT_NEAR(measurement_success_probability(zero, PauliString::from_str("ZZ"), spam),
                (1 - 0.2) * (1 - 0.2) + 0.2 * 0.2, 1e-12);
}
