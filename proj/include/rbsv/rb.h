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

#ifndef RBSV_RB_H
#define RBSV_RB_H

#include <array>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "rbsv/engines.h"
#include "rbsv/fit.h"

namespace rbsv {

/// Channels for each gate category.
struct NoiseModel {
    /// Applied after every random Clifford (or every generator in generator mode).
    NoiseChannel gate = Ideal{};
    /// Applied after the inverse step; defaults to `gate`.
    std::optional<NoiseChannel> inverse;
    SpamModel spam;

    const NoiseChannel &inverse_channel() const {
        return inverse ? *inverse : gate;
    }
};

enum class SequenceMode { FullClifford, Generator };

/// A fixed element placed after every random Clifford, with its own noise.
struct Interleaving {
    CliffordElement element;
    std::vector<NoiseChannel> noise;
};

/// Standard errors at or below this are treated as absent when weighting fits.
inline constexpr double kMinFitStderr = 1e-12;

struct RBConfig {
    size_t num_qubits = 2;
    std::vector<int> lengths;
    size_t sequences_per_length = 200;
    /// Repetitions per sequence in sampled mode.
    size_t shots = 100;
    /// Exact per-sequence probabilities from the density-matrix engine.
    bool exact = false;
    NoiseModel noise;
    SequenceMode mode = SequenceMode::FullClifford;
    /// Generators per block in generator mode.
    size_t mixing_length = 10;
    std::optional<Interleaving> interleaved;
    /// Weight the decay fit by 1/stderr^2 of each length's mean when every
    /// stderr exceeds kMinFitStderr; otherwise the fit is unweighted.
    bool weighted_fit = true;
    /// Box on the fitted A0 and B0; unset leaves them free.
    std::optional<std::array<double, 2>> fit_a_bounds = std::array<double, 2>{0, 1};
    std::optional<std::array<double, 2>> fit_b_bounds = std::array<double, 2>{0, 1};
    uint64_t seed = 0;
    size_t threads = 1;

    void validate() const;
    size_t dim() const {
        return size_t{1} << num_qubits;
    }
};

struct RBLengthData {
    int m = 0;
    double mean = 0;
    double stderr_ = 0;
    std::vector<double> per_sequence;
    size_t shots = 0;
};

struct RBData {
    size_t num_qubits = 0;
    bool exact = false;
    std::vector<RBLengthData> lengths;
    DecayFit fit;
    /// Decay parameter per fitted element (per generator in generator mode).
    double p = 1;
    double r = 0;
};

struct RBSequence {
    std::vector<CliffordElement> elements;
    CliffordElement inverse;
};

/// m uniform Cliffords and the inverse of their product.
RBSequence sample_rb_sequence(size_t num_qubits, int m, std::mt19937_64 &rng);

/// m blocks of `b` gates, each drawn uniformly from generator_set(n).
std::vector<GeneratorGate> sample_generator_sequence(size_t num_qubits, size_t b, int m, std::mt19937_64 &rng);

/// The noisy circuit for sequence `j` of length `m`, inverse included when
/// `with_inverse`. Random elements are drawn from `seq_rng`.
SequenceSpec build_sequence(const RBConfig &config, int m, bool with_inverse, std::mt19937_64 &seq_rng);

/// Survival probability estimate for one sequence: exact probability in exact
/// mode, else the fraction of `shots` surviving trajectories.
double sequence_survival(const SequenceSpec &spec, bool exact, size_t shots, std::mt19937_64 &noise_rng);

/// Fit used by the protocol drivers, honoring the config's weighting and bounds.
DecayFit protocol_fit(const std::vector<DecayPoint> &points, const RBConfig &config);

RBData run_standard_rb(const RBConfig &config);

/// Columns m,P_m,stderr,K_m,shots.
void write_rb_csv(std::ostream &out, const RBData &data);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

}  // namespace rbsv

#endif
