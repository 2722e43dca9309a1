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

#include "rbsv/clifford.h"
#include "rbsv/engines.h"
#include "rbsv/stabilizer_tableau.h"

using namespace rbsv;

namespace {

SequenceSpec random_spec(size_t n, int m, const std::vector<NoiseChannel> &noise, std::mt19937_64 &rng) {
    SequenceSpec spec;
    spec.num_qubits = n;
    for (int k = 0; k < m; k++) {
        spec.elements.push_back(NoisyElement{random_clifford(n, rng), noise});
    }
    return spec;
}

Matrix projector(const Vector &psi) {
    return psi * psi.adjoint();
}

double binomial_sigma(double p, int n) {
    return std::sqrt(std::max(p * (1 - p), 1e-12) / n);
}

}  // namespace

TEST(engines, noiseless_output_is_ideal_state) {
    std::mt19937_64 rng(1);
    for (size_t n : {1, 2, 3}) {
        const SequenceSpec spec = random_spec(n, 6, {}, rng);
        const DensityMatrix rho = run_sequence_exact(spec, true);
        EXPECT_NEAR(rho.fidelity_with(ideal_state(spec)), 1.0, 1e-12);
        // The ideal state is stabilized by the tableau of the ideal product.
        const Vector psi = ideal_state(spec);
        for (const auto &s : stabilizer_group(spec.ideal_product())) {
            EXPECT_LT((s.to_matrix() * psi - psi).norm(), 1e-12) << s.str();
        }
    }
}

TEST(engines, depolarizing_closed_form) {
    std::mt19937_64 rng(2);
    const double eps = 0.07;
    for (int m = 1; m <= 5; m++) {
        const SequenceSpec spec = random_spec(2, m, {Depolarizing{eps}}, rng);
        const double pm = std::pow(1 - eps, m);
        const Matrix want = pm * projector(ideal_state(spec)) + (1 - pm) * Matrix::Identity(4, 4) / 4.0;
        EXPECT_LT((run_sequence_exact(spec).matrix() - want).cwiseAbs().maxCoeff(), 1e-12) << "m=" << m;
    }
}

TEST(engines, empty_sequence_is_prepared_state) {
    SequenceSpec spec;
    spec.num_qubits = 2;
    spec.spam.prep = Depolarizing{0.2};
    const Matrix want = apply_linear(Depolarizing{0.2}, DensityMatrix::zero_state(2).matrix());
    EXPECT_LT((run_sequence_exact(spec).matrix() - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(engines, size_limit_and_validation) {
    SequenceSpec spec;
    spec.num_qubits = kMaxExactQubits + 1;
    EXPECT_THROW(run_sequence_exact(spec), std::invalid_argument);
    std::mt19937_64 rng(3);
    SequenceSpec bad = random_spec(2, 2, {}, rng);
    bad.elements.push_back(NoisyElement{random_clifford(3, rng), {}});
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(engines, exact_steps_keep_density_invariants) {
    std::mt19937_64 rng(4);
    const SequenceSpec spec =
        random_spec(2, 20,
                    {Depolarizing{0.03}, PauliChannel::from_table({{"II", 0.9}, {"XY", 0.1}}),
                     DeltaDepolarizing{0.1, 0.9, rotation_perturbation(2, 'x', 0.4)}},
                    rng);
    EXPECT_NO_THROW(run_sequence_exact(spec, true));
}

TEST(engines, survival_examples) {
    EXPECT_NEAR(survival_probability(DensityMatrix::zero_state(2), {}), 1.0, 1e-15);
    EXPECT_NEAR(survival_probability(DensityMatrix::maximally_mixed(3), {}), 1.0 / 8, 1e-15);
    const double p = 0.8;
    Matrix rho = p * DensityMatrix::zero_state(2).matrix() + (1 - p) * Matrix::Identity(4, 4) / 4.0;
    EXPECT_NEAR(survival_probability(DensityMatrix(rho), {}), p + (1 - p) / 4, 1e-15);
}

TEST(engines, survival_after_inverse_follows_decay_form) {
    std::mt19937_64 rng(5);
    const double eps = 0.02;
    for (int m : {1, 3, 8}) {
        SequenceSpec spec = random_spec(2, m, {Depolarizing{eps}}, rng);
        spec.elements.push_back(NoisyElement{inverse(spec.ideal_product()), {Depolarizing{eps}}});
        const double want = 0.25 + 0.75 * std::pow(1 - eps, m + 1);
        EXPECT_NEAR(survival_probability(run_sequence_exact(spec), spec.spam), want, 1e-12);
    }
}

TEST(engines, trajectory_noiseless_and_identity_always_accept) {
    std::mt19937_64 rng(6);
    const SequenceSpec clean = random_spec(3, 8, {}, rng);
    const auto group = stabilizer_group(clean.ideal_product());
    for (const auto &s : group) {
        EXPECT_TRUE(run_sequence_trajectory(clean, s, rng).accept) << s.str();
    }
    SequenceSpec noisy = random_spec(2, 8, {Depolarizing{0.5}}, rng);
    noisy.spam.p_meas = 0.5;
    for (int k = 0; k < 200; k++) {
        EXPECT_TRUE(run_sequence_trajectory(noisy, PauliString(2), rng).accept);
    }
}

TEST(engines, trajectory_matches_exact_acceptance) {
    std::mt19937_64 rng(7);
    const SequenceSpec spec = random_spec(2, 10, {Depolarizing{0.01}}, rng);
    const auto group = stabilizer_group(spec.ideal_product());
    const PauliString s = group[3];
    const double exact = measurement_success_probability(run_sequence_exact(spec), s, spec.spam);
    const int shots = 100000;
    int acc = 0;
    for (int k = 0; k < shots; k++) {
        acc += run_sequence_trajectory(spec, s, rng).accept ? 1 : 0;
    }
    EXPECT_NEAR(acc / static_cast<double>(shots), exact, 3 * binomial_sigma(exact, shots));
}

TEST(engines, trajectory_matches_exact_with_spam_and_pauli_noise) {
    std::mt19937_64 rng(8);
    SequenceSpec spec = random_spec(
        2, 6, {PauliChannel::from_table({{"II", 0.9}, {"XZ", 0.04}, {"YI", 0.06}})}, rng);
    spec.spam.prep = Depolarizing{0.05};
    spec.spam.meas = PauliChannel::from_table({{"II", 0.95}, {"IX", 0.05}});
    spec.spam.p_meas = 0.06;
    const DensityMatrix rho = run_sequence_exact(spec);
    FrameSimulator sim(spec);
    const int shots = 100000;
    for (const auto &s : stabilizer_group(spec.ideal_product())) {
        const double exact = measurement_success_probability(rho, s, spec.spam);
        int acc = 0;
        for (int k = 0; k < shots; k++) {
            sim.sample_frame(rng);
            acc += sim.accept_stabilizer_bits(s.x_words().data(), s.z_words().data(), rng) ? 1 : 0;
        }
        EXPECT_NEAR(acc / static_cast<double>(shots), exact, 3.5 * binomial_sigma(exact, shots)) << s.str();
    }
    // Survival after the inverse, flips on every qubit.
    SequenceSpec with_inv = spec;
    with_inv.elements.push_back(NoisyElement{inverse(spec.ideal_product()), {Depolarizing{0.02}}});
    const double exact = survival_probability(run_sequence_exact(with_inv), with_inv.spam);
    int ok = 0;
    for (int k = 0; k < shots; k++) {
        ok += run_survival_trajectory(with_inv, rng) ? 1 : 0;
    }
    EXPECT_NEAR(ok / static_cast<double>(shots), exact, 3.5 * binomial_sigma(exact, shots));
}

TEST(engines, outcome_is_commutation_of_fault_with_stabilizer) {
    std::mt19937_64 rng(9);
    const SequenceSpec spec = random_spec(3, 5, {Depolarizing{0.3}}, rng);
    const auto group = stabilizer_group(spec.ideal_product());
    std::uniform_int_distribution<size_t> pick(0, group.size() - 1);
    for (int k = 0; k < 2000; k++) {
        const PauliString &s = group[pick(rng)];
        const TrajectoryOutcome out = run_sequence_trajectory(spec, s, rng);
        EXPECT_EQ(out.accept, out.fault_record.commutes(s));
        EXPECT_EQ(out.measured_stabilizer, s);
    }
}

TEST(engines, trajectory_rejects_non_pauli_noise) {
    std::mt19937_64 rng(10);
    const SequenceSpec spec = random_spec(1, 3, {DeltaDepolarizing{0.1, 0.9, rotation_perturbation(1, 'x', 0.3)}}, rng);
    EXPECT_THROW(FrameSimulator{spec}, UnsupportedForTrajectory);
}

TEST(engines, trajectory_runs_on_large_registers) {
    std::mt19937_64 rng(11);
    const SequenceSpec spec = random_spec(100, 4, {Depolarizing{0.0}}, rng);
    FrameSimulator sim(spec);
    for (const auto &s : sim.final_stabilizers()) {
        sim.sample_frame(rng);
        EXPECT_TRUE(sim.accept_stabilizer_bits(s.x_words().data(), s.z_words().data(), rng));
    }
}
