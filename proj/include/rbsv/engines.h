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

#ifndef RBSV_ENGINES_H
#define RBSV_ENGINES_H

#include <random>
#include <vector>

#include "rbsv/clifford.h"
#include "rbsv/noise.h"

namespace rbsv {

/// One Clifford followed by the channels that act after it, in order.
struct NoisyElement {
    CliffordElement element;
    std::vector<NoiseChannel> noise;
};

struct SequenceSpec {
    size_t num_qubits = 0;
    std::vector<NoisyElement> elements;
    SpamModel spam;

    void validate() const;
    /// Ideal product C_m ... C_1 as an element (identity for m = 0).
    CliffordElement ideal_product() const;
};

/// Largest register the dense engine accepts.
inline constexpr size_t kMaxExactQubits = 6;

/// rho = noise_m C_m ... noise_1 C_1 prep(|0..0><0..0|), exact. With
/// `validate_steps` the density-matrix invariants are rechecked after every
/// element.
DensityMatrix run_sequence_exact(const SequenceSpec &spec, bool validate_steps = false);

/// C_m ... C_1 |0..0> with the phase convention of clifford_to_matrix.
Vector ideal_state(const SequenceSpec &spec);

/// Tr(flips(meas(rho)) |0..0><0..0|), with measurement flips on every qubit.
double survival_probability(const DensityMatrix &rho, const SpamModel &spam);

struct TrajectoryOutcome {
    bool accept = false;
    PauliString measured_stabilizer;
    /// Accumulated fault, Heisenberg-propagated to the end of the sequence
    /// (phase not tracked). Includes measurement noise from spam.meas.
    PauliString fault_record;
};

/// A sequence compiled for repeated Pauli-frame trajectories. Construction
/// throws UnsupportedForTrajectory if any channel is not Pauli-diagonal.
class FrameSimulator {
   public:
    explicit FrameSimulator(const SequenceSpec &spec);

    size_t num_qubits() const {
        return num_qubits_;
    }
    /// Stabilizer generators of the ideal output state.
    const std::vector<PauliString> &final_stabilizers() const {
        return final_stabilizers_;
    }

    /// Samples prep, gate, and measurement-channel faults and propagates them
    /// to the end of the sequence.
    void sample_frame(std::mt19937_64 &rng);
    /// Outcome of measuring `s` on the current frame: s must stabilize the
    /// ideal output (checked by the caller). Samples measurement flips.
    bool accept_stabilizer_bits(const uint64_t *sx, const uint64_t *sz, std::mt19937_64 &rng) const;
    /// All-zero computational-basis outcome on the current frame, with
    /// measurement flips on every qubit.
    bool survived(std::mt19937_64 &rng) const;
    PauliString frame() const;

   private:
    size_t num_qubits_ = 0;
    size_t words_ = 0;
    // images_[((e * 2n) + 2q + b) * 2 * words_]: x then z words of the image of
    // X_q (b = 0) or Z_q (b = 1) under element e.
    std::vector<uint64_t> images_;
    std::vector<std::vector<FaultSampler>> noise_;
    FaultSampler prep_;
    FaultSampler meas_;
    double p_meas_ = 0;
    std::vector<PauliString> final_stabilizers_;
    std::vector<uint64_t> fx_, fz_, tx_, tz_;
};

/// +1 if s stabilizes C|0..0>, -1 if -s does, 0 if s anticommutes with some
/// stabilizer (measurement outcome uniformly random).
int stabilizer_sign(const CliffordElement &c, const PauliString &s);

/// One accept/reject sample for measuring `s` after the noisy sequence.
TrajectoryOutcome run_sequence_trajectory(const SequenceSpec &spec, const PauliString &s, std::mt19937_64 &rng);

/// One survival sample (computational-basis return to |0..0>).
bool run_survival_trajectory(const SequenceSpec &spec, std::mt19937_64 &rng);

}  // namespace rbsv

#endif
