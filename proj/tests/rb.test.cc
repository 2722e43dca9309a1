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
#include <sstream>

#include "rbsv/rb.h"

using namespace rbsv;

namespace {

RBConfig exact_config(double eps, size_t k_m = 5) {
    RBConfig c;
    c.num_qubits = 2;
    c.exact = true;
    c.sequences_per_length = k_m;
    for (int m = 5; m <= 50; m += 5) {
        c.lengths.push_back(m);
    }
    c.noise.gate = Depolarizing{eps};
    c.seed = 7;
    return c;
}

}  // namespace

TEST(rb, sampled_sequence_inverts) {
    std::mt19937_64 rng(1);
    for (int m : {1, 2, 10}) {
        for (size_t n : {1, 2, 5}) {
            const RBSequence seq = sample_rb_sequence(n, m, rng);
            CliffordElement prod = CliffordElement::identity(n);
            for (const auto &c : seq.elements) {
                prod = compose(prod, c);
            }
            EXPECT_TRUE(compose(prod, seq.inverse).is_identity());
        }
    }
    const CliffordElement h = CliffordElement::from_gate(GeneratorGate::h(0), 1);
    EXPECT_EQ(inverse(h), h);
    EXPECT_THROW(sample_rb_sequence(2, 0, rng), std::invalid_argument);
}

TEST(rb, exact_closed_form) {
    const double eps = 0.01;
    const RBData d = run_standard_rb(exact_config(eps));
    for (const auto &row : d.lengths) {
        const double want = 0.25 + 0.75 * std::pow(1 - eps, row.m + 1);
        for (double v : row.per_sequence) {
            EXPECT_NEAR(v, want, 1e-12) << "m=" << row.m;
        }
        EXPECT_NEAR(row.mean, want, 1e-12);
    }
    EXPECT_NEAR(d.p, 1 - eps, 1e-6);
    EXPECT_NEAR(d.r, 0.75 * eps, 1e-6);
}

TEST(rb, noiseless_survival_is_one) {
    RBConfig c = exact_config(0.0, 3);
    for (const auto &row : run_standard_rb(c).lengths) {
        EXPECT_NEAR(row.mean, 1.0, 1e-12);
    }
    c.exact = false;
    c.shots = 50;
    for (const auto &row : run_standard_rb(c).lengths) {
        EXPECT_EQ(row.mean, 1.0);
    }
}

TEST(rb, monotone_in_length) {
    const RBData d = run_standard_rb(exact_config(0.02, 3));
    for (size_t i = 1; i < d.lengths.size(); i++) {
        EXPECT_LE(d.lengths[i].mean, d.lengths[i - 1].mean + 1e-15);
    }
}

TEST(rb, shots_converge_to_exact) {
    RBConfig c = exact_config(0.02, 3);
    c.lengths = {2, 10, 30};
    c.noise.spam.p_meas = 0.01;
    const RBData exact = run_standard_rb(c);
    c.exact = false;
    c.shots = 10000;
    const RBData shots = run_standard_rb(c);
    for (size_t i = 0; i < c.lengths.size(); i++) {
        for (size_t j = 0; j < c.sequences_per_length; j++) {
            const double p = exact.lengths[i].per_sequence[j];
            const double sigma = std::sqrt(p * (1 - p) / c.shots);
            EXPECT_NEAR(shots.lengths[i].per_sequence[j], p, 3.5 * sigma);
        }
    }
}

TEST(rb, non_pauli_noise_in_sampled_mode_uses_exact_probabilities) {
    RBConfig c = exact_config(0.0, 2);
    c.lengths = {1, 3, 6};
    c.noise.gate = DeltaDepolarizing{0.05, 0.98, rotation_perturbation(2, 'x', 0.3)};
    const RBData exact = run_standard_rb(c);
    c.exact = false;
    c.shots = 20000;
    const RBData shots = run_standard_rb(c);
    for (size_t i = 0; i < c.lengths.size(); i++) {
        const double p = exact.lengths[i].mean;
        EXPECT_NEAR(shots.lengths[i].mean, p, 4 * std::sqrt(p * (1 - p) / c.shots) + 1e-12);
    }
}

TEST(rb, generator_sequence_support_and_uniformity) {
    std::mt19937_64 rng(3);
    const auto gens = generator_set(2);
    const auto seq = sample_generator_sequence(2, 10, 2000, rng);
    ASSERT_EQ(seq.size(), 20000u);
    std::map<std::string, int> counts;
    for (const auto &g : seq) {
        EXPECT_NE(std::find(gens.begin(), gens.end(), g), gens.end());
        counts[g.str()]++;
    }
    ASSERT_EQ(counts.size(), gens.size());
    const double expected = static_cast<double>(seq.size()) / gens.size();
    double chi2 = 0;
    for (const auto &[k, v] : counts) {
        chi2 += (v - expected) * (v - expected) / expected;
    }
    // 8 categories: chi-square critical value at alpha = 0.01 with 7 dof.
    EXPECT_EQ(gens.size(), 8u);
    EXPECT_LT(chi2, 18.475);
}

TEST(rb, generator_mode_decays_per_generator) {
    RBConfig c = exact_config(0.002, 4);
    c.mode = SequenceMode::Generator;
    c.mixing_length = 10;
    c.lengths = {2, 4, 6, 8, 10, 14, 20};
    const RBData d = run_standard_rb(c);
    EXPECT_NEAR(d.p, 0.998, 1e-6);
    EXPECT_NEAR(d.fit.p, std::pow(0.998, 10), 1e-6);
}

TEST(rb, interleaved_element_multiplies_decay) {
    RBConfig c = exact_config(0.004, 3);
    std::mt19937_64 rng(5);
    c.interleaved = Interleaving{random_clifford(2, rng), {Depolarizing{0.01}}};
    const RBData d = run_standard_rb(c);
    EXPECT_NEAR(d.fit.p, 0.996 * 0.99, 1e-6);
}

TEST(rb, results_do_not_depend_on_thread_count) {
    RBConfig c = exact_config(0.01, 6);
    c.exact = false;
    c.shots = 50;
    c.seed = 99;
    const RBData one = run_standard_rb(c);
    c.threads = 4;
    const RBData four = run_standard_rb(c);
    std::ostringstream a, b;
    write_rb_csv(a, one);
    write_rb_csv(b, four);
    EXPECT_EQ(a.str(), b.str());
}

TEST(rb, config_validation) {
    RBConfig c = exact_config(0.01);
    c.lengths = {};
    EXPECT_THROW(run_standard_rb(c), std::invalid_argument);
    c = exact_config(0.01);
    c.lengths = {0, 5};
    EXPECT_THROW(run_standard_rb(c), std::invalid_argument);
    c = exact_config(0.01);
    c.sequences_per_length = 0;
    EXPECT_THROW(run_standard_rb(c), std::invalid_argument);
    c = exact_config(0.01);
    c.mode = SequenceMode::Generator;
    c.mixing_length = 0;
    EXPECT_THROW(run_standard_rb(c), std::invalid_argument);
}

TEST(rb, csv_header) {
    const RBData d = run_standard_rb(exact_config(0.01, 2));
    std::ostringstream s;
    write_rb_csv(s, d);
    EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "m,P_m,stderr,K_m,shots");
}
