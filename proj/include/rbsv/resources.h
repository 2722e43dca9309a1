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

#ifndef RBSV_RESOURCES_H
#define RBSV_RESOURCES_H

#include <cstdint>
#include <optional>
#include <vector>

namespace rbsv {

/// ceil(1/t^2) repetitions for estimator accuracy t in (0, 1].
uint64_t hoeffding_shots(double t);
/// exp(-2 N t^2), the failure probability of the Hoeffding estimate.
double hoeffding_failure_probability(uint64_t shots, double t);

/// (1/(1-lambda))^((1-lambda)/(upsilon+1)) (upsilon/(upsilon+lambda))^((upsilon+lambda)/(upsilon+1)).
double h_function(double lambda, double upsilon);

/// -log(2/delta) / log H before rounding.
double sequences_needed_raw(double delta, double lambda, double upsilon);
/// ceil(sequences_needed_raw). Throws std::domain_error when H >= 1.
uint64_t sequences_needed(double delta, double lambda, double upsilon);

/// Variance upper bound at length m with p = 1 - d r/(d-1) and u = (p^2+1)/2.
/// `with_spam` selects the bound carrying the SPAM parameter eta; otherwise
/// the SPAM-free bound is used and eta is ignored.
double variance_bound(int m, double r, double d, double eta, bool with_spam);

/// ceil(-q log(2/delta) / (t^2 log H)).
uint64_t total_experiments(uint64_t q, double delta, double t, double lambda, double upsilon);

/// prod_i (1 - p_meas)^|s_i| over the stabilizer weights.
double perf_probability(double p_meas, const std::vector<size_t> &weights);
/// (1 - p_meas)^(n R).
double perf_lower_bound(double p_meas, size_t n, double r_copies);

inline constexpr double kDefaultRegimeConstant = 0.01;

/// p_meas <= c/(n R).
bool regime_ok(double p_meas, size_t n, double r_copies, double c = kDefaultRegimeConstant);

/// q K_m n^2 tableau-row operations.
double classical_cost(uint64_t q, uint64_t k_m, size_t n);

struct ResourcePlan {
    double t = 0.01;
    double delta = 0.05;
    double lambda = 0.02;
    double upsilon = 0.005;
    uint64_t q = 20;
    size_t n = 2;
    double R = 10;
    double p_meas = 0;
    double regime_constant = kDefaultRegimeConstant;
    /// When set, upsilon is replaced by variance_bound(m, r, 2^n, eta, with_spam).
    std::optional<int> m;
    double r = 0.001;
    double eta = 0;
    bool with_spam = true;

    void validate() const;
};

struct ResourceReport {
    double upsilon = 0;
    uint64_t N_m = 0;
    double hoeffding_failure = 0;
    double H = 0;
    double K_m_raw = 0;
    uint64_t K_m = 0;
    uint64_t N_exp = 0;
    double N_class_scaled = 0;
    double P_perf_lower = 1;
    bool regime_ok = true;
};

ResourceReport evaluate_plan(const ResourcePlan &plan);

}  // namespace rbsv

#endif
