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

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "rbsv/resources.h"

using namespace rbsv;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Direct evaluation of the variance bounds in 50-digit arithmetic.
Big variance_oracle(int m, const Big &r, const Big &d, const Big &eta, bool with_spam) {
    using boost::multiprecision::pow;
    const Big p = 1 - d * r / (d - 1);
    const Big u = (p * p + 1) / 2;
    const Big d1 = (d - 1) * (d - 1);
    const Big bm = m;
    if (!with_spam) {
        return pow(p, bm - 1) * (d * d - 1) * bm / (4 * d1) * r * r + pow(u, bm - 2) * d * d * bm * (bm - 1) / (2 * d1) * r * r;
    }
    const Big x = p * p / u;
    const Big bracket = ((bm - 1) * pow(x, bm) - bm * pow(x, bm - 1) + 1) / (1 - x);
    return (d * d - 2) / (4 * d1) * r * r * bm * pow(p, bm - 1) + d * d * (1 + 4 * eta) * r * r / d1 * bracket * pow(u, bm - 2) +
           2 * eta * d * bm * r / (d - 1) * pow(p, bm - 1);
}

}  // namespace

TEST(resources, hoeffding_examples) {
    EXPECT_EQ(hoeffding_shots(0.01), 10000u);
    EXPECT_EQ(hoeffding_shots(0.1), 100u);
    EXPECT_EQ(hoeffding_shots(1), 1u);
    EXPECT_EQ(hoeffding_shots(0.3), 12u);
    EXPECT_THROW(hoeffding_shots(0), std::invalid_argument);
    EXPECT_THROW(hoeffding_shots(1.5), std::invalid_argument);
    EXPECT_NEAR(hoeffding_failure_probability(10000, 0.01), std::exp(-2.0), 1e-15);
    for (double t : {0.5, 0.05, 0.003}) {
        EXPECT_LE(hoeffding_failure_probability(hoeffding_shots(t), t), std::exp(-2.0) + 1e-15);
    }
}

TEST(resources, h_function_and_sequence_count) {
    EXPECT_NEAR(h_function(0.02, 0.005), 0.97986975760080891533, 1e-12);
    EXPECT_NEAR(sequences_needed_raw(0.05, 0.02, 0.005), 181.39993168, 1e-6);
    EXPECT_EQ(sequences_needed(0.05, 0.02, 0.005), 182u);
    EXPECT_THROW(sequences_needed(0.05, 0.0, 0.005), std::invalid_argument);
    EXPECT_THROW(sequences_needed(0.05, 0.02, -0.1), std::invalid_argument);
}

TEST(resources, h_below_one_on_grid) {
    for (double lambda = 0.005; lambda < 1; lambda += 0.05) {
        for (double upsilon : {1e-6, 1e-4, 0.005, 0.1, 1.0, 10.0}) {
            const double h = h_function(lambda, upsilon);
            EXPECT_GT(h, 0) << lambda << " " << upsilon;
            EXPECT_LT(h, 1) << lambda << " " << upsilon;
        }
    }
}

TEST(resources, sequence_count_monotonicity) {
    const double base = sequences_needed_raw(0.05, 0.02, 0.005);
    EXPECT_GT(sequences_needed_raw(0.01, 0.02, 0.005), base);
    EXPECT_LT(sequences_needed_raw(0.05, 0.04, 0.005), base);
    EXPECT_GT(sequences_needed_raw(0.05, 0.02, 0.01), base);
    double prev = 0;
    for (double u = 1e-4; u < 0.1; u *= 1.5) {
        const double k = sequences_needed_raw(0.05, 0.02, u);
        EXPECT_GT(k, prev);
        prev = k;
    }
}

TEST(resources, total_experiments_examples) {
    EXPECT_EQ(total_experiments(20, 0.05, 0.01, 0.02, 0.005), 36279987u);
    const double raw = sequences_needed_raw(0.05, 0.02, 0.005);
    EXPECT_EQ(total_experiments(1, 0.05, 1, 0.02, 0.005), static_cast<uint64_t>(std::ceil(raw)));
    EXPECT_GE(total_experiments(3, 0.05, 0.1, 0.02, 0.005), 3 * 100 * 181u);
}

TEST(resources, perf_probability_and_regime) {
    EXPECT_NEAR(perf_lower_bound(0.001, 2, 10), 0.98018886482953468261, 1e-15);
    EXPECT_NEAR(perf_probability(0.001, {2, 2, 1, 1, 2, 1, 2, 1, 2, 2}), std::pow(0.999, 16), 1e-15);
    EXPECT_GE(perf_probability(0.001, {2, 2, 2, 2, 2, 2, 2, 2, 2, 2}), perf_lower_bound(0.001, 2, 10) - 1e-15);
    EXPECT_EQ(perf_probability(0.0, {3, 3}), 1.0);
    EXPECT_TRUE(regime_ok(0.0005, 2, 10));
    EXPECT_FALSE(regime_ok(0.001, 2, 10));
    EXPECT_THROW(perf_lower_bound(1.0, 2, 10), std::invalid_argument);
    EXPECT_EQ(classical_cost(20, 182, 2), 20 * 182 * 4);
}

TEST(resources, variance_bound_matches_high_precision_oracle) {
    for (bool spam : {false, true}) {
        for (double d : {2.0, 4.0, 8.0}) {
            for (double r : {1e-5, 1e-3, 0.05}) {
                for (int m : {1, 2, 5, 50, 200}) {
                    for (double eta : {0.0, 0.01}) {
                        const double got = variance_bound(m, r, d, eta, spam);
                        const double want = static_cast<double>(variance_oracle(m, Big(r), Big(d), Big(eta), spam));
                        EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, std::abs(want)))
                            << "spam=" << spam << " d=" << d << " r=" << r << " m=" << m << " eta=" << eta;
                        EXPECT_NEAR(got / want, 1.0, 1e-10);
                    }
                }
            }
        }
    }
}

TEST(resources, variance_bound_validation) {
    EXPECT_THROW(variance_bound(0, 0.001, 4, 0, true), std::invalid_argument);
    EXPECT_THROW(variance_bound(5, 0.0, 4, 0, true), std::invalid_argument);
    EXPECT_THROW(variance_bound(5, 0.8, 4, 0, true), std::invalid_argument);
    EXPECT_THROW(variance_bound(5, 0.001, 4, -1, true), std::invalid_argument);
    EXPECT_GT(variance_bound(5, 0.001, 4, 0.01, true), variance_bound(5, 0.001, 4, 0, true));
}

TEST(resources, plan_defaults) {
    const ResourceReport rep = evaluate_plan(ResourcePlan{});
    EXPECT_EQ(rep.N_m, 10000u);
    EXPECT_EQ(rep.K_m, 182u);
    EXPECT_EQ(rep.N_exp, 36279987u);
    EXPECT_NEAR(rep.H, 0.97986975760080891533, 1e-12);
    EXPECT_EQ(rep.P_perf_lower, 1.0);
    EXPECT_TRUE(rep.regime_ok);
}

TEST(resources, plan_with_variance_bound) {
    ResourcePlan plan;
    plan.m = 20;
    plan.r = 0.001;
    const ResourceReport rep = evaluate_plan(plan);
    EXPECT_NEAR(rep.upsilon, variance_bound(20, 0.001, 4, 0, true), 1e-18);
    EXPECT_LT(rep.K_m, 182u);
    plan.lambda = 0;
    EXPECT_THROW(evaluate_plan(plan), std::invalid_argument);
}
