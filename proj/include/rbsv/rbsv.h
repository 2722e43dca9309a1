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

#ifndef RBSV_RBSV_H
#define RBSV_RBSV_H

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbsv/rb.h"

namespace rbsv {

/// Every verification round rejected: the bound is undefined.
class FailureSignature : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// 1 - 1/(p_acc^R . R). May be negative for small p_acc.
double fidelity_lower_bound(double p_acc, double r_copies);

struct OptimalR {
    double R = 1;
    /// p_acc = 1 (or the optimum exceeded the cap): R was set to the cap.
    bool saturated = false;
};

inline constexpr double kDefaultRCap = 1e4;

/// R = 1/ln(1/p_acc), capped at `cap`.
OptimalR optimal_R(double p_acc, double cap = kDefaultRCap);

/// |fidelity_lower_bound(p_acc, R) - true_fidelity|.
double drift(double p_acc, double r_copies, double true_fidelity);

struct RPolicy {
    enum class Kind { Optimal, Fixed };
    Kind kind = Kind::Optimal;
    double fixed_R = 1;
    double cap = kDefaultRCap;
};

struct RBSVConfig {
    /// Sequences, noise, mode (exact/sampled), seed and threads. `shots` is
    /// unused; repetitions come from `repetitions`.
    RBConfig base;
    /// N_m, repetitions per sequence.
    size_t repetitions = 100;
    RPolicy r_policy;
    bool include_identity = true;

    void validate() const;
};

struct AcceptanceRecord {
    size_t j = 0;
    int m = 0;
    size_t repetitions = 0;
    size_t accepted = 0;
    double p_acc_hat = 0;
    bool exact = false;
    /// <psi|rho|psi> of the ideal output, exact mode only.
    std::optional<double> exact_fidelity;
};

struct RBSVSequenceOptions {
    bool exact = false;
    bool include_identity = true;
};

/// Protocol steps 3-4 for one sequence: a fresh uniform stabilizer per
/// repetition and one accept/reject sample each. Exact mode returns the
/// group-averaged acceptance probability instead of sampling.
AcceptanceRecord run_rbsv_sequence(const SequenceSpec &seq, size_t repetitions, std::mt19937_64 &rng,
                                   const RBSVSequenceOptions &options = {});

struct RBSVLengthData {
    int m = 0;
    double F_bar = 0;
    double stderr_ = 0;
    std::vector<double> bounds;
    std::vector<double> R;
    std::vector<AcceptanceRecord> records;
    double mean_p_acc = 0;
    double mean_R = 0;
    size_t n_saturated = 0;
};

struct RBSVResult {
    size_t num_qubits = 0;
    std::vector<RBSVLengthData> lengths;
    DecayFit fit;
    double r_rbsv = 0;
    bool degenerate = false;
    std::vector<std::string> warnings;
};

RBSVResult run_rbsv(const RBSVConfig &config);

/// Columns m,F_bar_m,mean_p_acc,mean_R,n_saturated.
void write_rbsv_csv(std::ostream &out, const RBSVResult &result);

}  // namespace rbsv

#endif
