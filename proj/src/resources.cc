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

#include "rbsv/resources.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rbsv {

namespace {

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

uint64_t ceil_to_count(double v) {
    require(std::isfinite(v) && v >= 0 && v < 1.8e19, "resource count is not finite");
    return static_cast<uint64_t>(std::ceil(v));
}

void check_h_inputs(double lambda, double upsilon) {
    require(lambda > 0 && lambda < 1, "lambda must lie in (0, 1)");
    require(upsilon > 0 && std::isfinite(upsilon), "upsilon must be positive");
}

}  // namespace

uint64_t hoeffding_shots(double t) {
    require(t > 0 && t <= 1, "t must lie in (0, 1]");
    // 1/t^2 is often an integer up to rounding; trim the representation error.
    const double raw = 1 / (t * t);
    const double nearest = std::round(raw);
    return std::abs(raw - nearest) <= 1e-9 * nearest ? static_cast<uint64_t>(nearest) : ceil_to_count(raw);
}

double hoeffding_failure_probability(uint64_t shots, double t) {
    return std::exp(-2 * static_cast<double>(shots) * t * t);
}

double h_function(double lambda, double upsilon) {
    check_h_inputs(lambda, upsilon);
    const double a = (1 - lambda) / (upsilon + 1);
    const double b = (upsilon + lambda) / (upsilon + 1);
    return std::exp(-a * std::log1p(-lambda) + b * std::log(upsilon / (upsilon + lambda)));
}

double sequences_needed_raw(double delta, double lambda, double upsilon) {
    require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
    const double log_h = std::log(h_function(lambda, upsilon));
    if (!(log_h < 0)) {
        throw std::domain_error("H(lambda, upsilon) >= 1: K_m diverges");
    }
    return -std::log(2 / delta) / log_h;
}

uint64_t sequences_needed(double delta, double lambda, double upsilon) {
    return ceil_to_count(sequences_needed_raw(delta, lambda, upsilon));
}

double variance_bound(int m, double r, double d, double eta, bool with_spam) {
    require(m >= 1, "m must be at least 1");
    require(r > 0 && r < 1, "r must lie in (0, 1)");
    require(d >= 2, "dimension must be at least 2");
    const double one_minus_p = d * r / (d - 1);
    const double p = 1 - one_minus_p;
    if (!(p > 0)) {
        throw std::invalid_argument("p = 1 - d r/(d-1) must be positive");
    }
    const double u = (p * p + 1) / 2;
    const double dm = static_cast<double>(m);
    const double d1 = (d - 1) * (d - 1);
    if (!with_spam) {
        return std::pow(p, dm - 1) * (d * d - 1) * dm / (4 * d1) * r * r +
               std::pow(u, dm - 2) * d * d * dm * (dm - 1) / (2 * d1) * r * r;
    }
    require(eta >= 0 && std::isfinite(eta), "eta must be nonnegative");
    // ((m-1) x^m - m x^(m-1) + 1)/(1 - x) = (1 - x) sum_{k<m-1} (k+1) x^k with
    // x = p^2/u and 1 - x = (1 - p)(1 + p)/(2u).
    const double x = p * p / u;
    const double one_minus_x = one_minus_p * (1 + p) / (2 * u);
    double series = 0;
    for (int k = m - 2; k >= 0; k--) {
        series = series * x + (k + 1);
    }
    const double ratio = one_minus_x * series;
    return (d * d - 2) / (4 * d1) * r * r * dm * std::pow(p, dm - 1) +
           d * d * (1 + 4 * eta) * r * r / d1 * ratio * std::pow(u, dm - 2) +
           2 * eta * d * dm * r / (d - 1) * std::pow(p, dm - 1);
}

uint64_t total_experiments(uint64_t q, double delta, double t, double lambda, double upsilon) {
    require(q >= 1, "q must be at least 1");
    require(t > 0 && t <= 1, "t must lie in (0, 1]");
    return ceil_to_count(static_cast<double>(q) * sequences_needed_raw(delta, lambda, upsilon) / (t * t));
}

double perf_probability(double p_meas, const std::vector<size_t> &weights) {
    require(p_meas >= 0 && p_meas < 1, "p_meas must lie in [0, 1)");
    double total = 0;
    for (size_t w : weights) {
        total += static_cast<double>(w);
    }
    return std::pow(1 - p_meas, total);
}

double perf_lower_bound(double p_meas, size_t n, double r_copies) {
    require(p_meas >= 0 && p_meas < 1, "p_meas must lie in [0, 1)");
    require(r_copies > 0, "R must be positive");
    return std::pow(1 - p_meas, static_cast<double>(n) * r_copies);
}

bool regime_ok(double p_meas, size_t n, double r_copies, double c) {
    require(n >= 1 && r_copies > 0 && c > 0, "regime test needs n >= 1, R > 0, c > 0");
    return p_meas <= c / (static_cast<double>(n) * r_copies);
}

double classical_cost(uint64_t q, uint64_t k_m, size_t n) {
    return static_cast<double>(q) * static_cast<double>(k_m) * static_cast<double>(n) * static_cast<double>(n);
}

void ResourcePlan::validate() const {
    require(t > 0 && t <= 1, "t must lie in (0, 1]");
    require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
    require(lambda > 0 && lambda < 1, "lambda must lie in (0, 1)");
    require(q >= 1, "q must be at least 1");
    require(n >= 1 && n < 63, "n must lie in [1, 62]");
    require(R > 0, "R must be positive");
    require(p_meas >= 0 && p_meas < 1, "p_meas must lie in [0, 1)");
    require(regime_constant > 0, "regime constant must be positive");
    if (m) {
        require(*m >= 1, "m must be at least 1");
        require(r > 0 && r < 1, "r must lie in (0, 1)");
        require(eta >= 0, "eta must be nonnegative");
    } else {
        require(upsilon > 0, "upsilon must be positive");
    }
}

ResourceReport evaluate_plan(const ResourcePlan &plan) {
    plan.validate();
    ResourceReport out;
    out.upsilon = plan.m ? variance_bound(*plan.m, plan.r, std::ldexp(1.0, static_cast<int>(plan.n)), plan.eta,
                                          plan.with_spam)
                         : plan.upsilon;
    out.N_m = hoeffding_shots(plan.t);
    out.hoeffding_failure = hoeffding_failure_probability(out.N_m, plan.t);
    out.H = h_function(plan.lambda, out.upsilon);
    out.K_m_raw = sequences_needed_raw(plan.delta, plan.lambda, out.upsilon);
    out.K_m = ceil_to_count(out.K_m_raw);
    out.N_exp = total_experiments(plan.q, plan.delta, plan.t, plan.lambda, out.upsilon);
    out.N_class_scaled = classical_cost(plan.q, out.K_m, plan.n);
    out.P_perf_lower = perf_lower_bound(plan.p_meas, plan.n, plan.R);
    out.regime_ok = regime_ok(plan.p_meas, plan.n, plan.R, plan.regime_constant);
    return out;
}

}  // namespace rbsv
