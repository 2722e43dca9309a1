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

#ifndef RBSV_IRB_GS_H
#define RBSV_IRB_GS_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbsv/linalg.h"
#include "rbsv/noise.h"
#include "rbsv/rb.h"

namespace rbsv {

/// diag(1, 1, 1, exp(i 2 pi / 2^k)). Qubit 0 is the control.
Matrix cp_matrix(int k);

/// diag(1, exp(i 2 pi / 2^k)).
Matrix pk_matrix(int k);

enum class RecipeGateKind { CP, CPDAG, H, P, PDAG, X };

struct RecipeGate {
    RecipeGateKind kind;
    /// One index for single-qubit gates, two for CP and CPDAG.
    std::vector<uint32_t> qubits;
    /// Rotation index of CP and CPDAG.
    int k = 2;

    bool is_nonclifford_slot() const {
        return kind == RecipeGateKind::CP || kind == RecipeGateKind::CPDAG;
    }
    /// 4x4 matrix on the two-qubit register.
    Matrix to_matrix() const;
};

/// A two-qubit target and a circuit claimed to implement it. Gates are in
/// circuit order: the first entry acts first.
struct SynthesisRecipe {
    std::string name;
    /// Target label, such as "I*P", "CNOT" or "I*P(3)". Empty when the target
    /// was given as a matrix literal.
    std::string target_name;
    Matrix target;
    std::vector<RecipeGate> gates;

    /// Number of CP and CPDAG entries.
    size_t nonclifford_count() const;
    /// Product of the gate matrices, last gate leftmost.
    Matrix product() const;
    /// Throws std::invalid_argument for bad qubit indices, k < 1 or a
    /// non-4x4 target.
    void validate() const;
};

/// Resolves names like "CNOT", "H*H", "PDAG*PDAG" and "I*P(3)". Single-qubit
/// factors are I, X, H, P, PDAG and P(k).
Matrix target_from_name(std::string_view name);

struct SynthesisCheck {
    bool pass = false;
    double max_deviation = 0;
};

inline constexpr double kSynthesisTolerance = 1e-12;

/// Compares the recipe's product against its target modulo one global phase.
SynthesisCheck verify_synthesis(const SynthesisRecipe &recipe, double tolerance = kSynthesisTolerance);

/// The seven generator recipes with two CP or CPDAG gates each. The I*H and
/// H*H rows lead with P^dagger (x) X.
std::vector<SynthesisRecipe> generator_recipes();

/// (X(x)I) CP(k) (X(x)I) CP(k), targeting I*P(k).
SynthesisRecipe cp_block_recipe(int k);
/// Two blocks, targeting I*P(k-1) with four CP(k) gates.
SynthesisRecipe cp_pair_recipe(int k);
/// 2^(k-2) blocks, targeting the Clifford I*P(2) with 2^(k-1) CP(k) gates.
/// Requires k >= 2.
SynthesisRecipe p2_chain_recipe(int k);

/// Recipe file: a JSON array of {name, target, gates: [{gate, qubits, k?}]}.
/// `target` is a name or 16 [re, im] pairs in row-major order. An optional
/// integer `L` is checked against the CP count.
std::vector<SynthesisRecipe> parse_recipes(std::string_view json_text);
std::string format_recipes(const std::vector<SynthesisRecipe> &recipes);

/// (d - 1)(1 - p_bar_c / p)/d.
double irb_estimate(double p, double p_bar_c, double d);
/// (d - 1)/d (1 - (p_bar_c / p)^(1/L)).
double irbgs_estimate(double p, double p_bar_c, double d, size_t nonclifford_count);

enum class NoiseClass { Depolarizing, Delta, Pauli };

std::string noise_class_name(NoiseClass c);

/// 2(d^2 - 1)(1 - p)/d^2 + 4 sqrt(1 - p) sqrt(d^2 - 1).
double e_prime(double p, double d);
/// 6(d^2 - 1)(1 - p)/d^2 + 4 sqrt(1 - p) sqrt(d^2 - 1).
double e_double_prime(double p, double d);

/// Bound on |r_N - r_N^est| for the given noise class. `delta` is used by the
/// Delta class only.
double error_bound(NoiseClass noise_class, double p, double d, double delta = 0);

/// Class whose bound applies to a channel on each non-Clifford gate.
NoiseClass classify_noise(const NoiseChannel &ch);

struct IrbgsConfig {
    /// Lengths, K_m, Lambda (noise.gate), SPAM, seed and threads. Exact mode
    /// is the default. `interleaved` is filled in by run_irbgs.
    RBConfig base;
    SynthesisRecipe recipe;
    /// Lambda_N, applied once per CP or CPDAG of the recipe.
    NoiseChannel nonclifford_noise = Ideal{};
    /// Applied once per single-qubit gate of the recipe when set.
    std::optional<NoiseChannel> single_qubit_noise;

    IrbgsConfig();
    void validate() const;
};

struct IrbEstimate {
    double p = 1;
    double p_bar_c = 1;
    double d = 4;
    size_t nonclifford_count = 0;
    double r_c_est = 0;
    double r_n_est = 0;
    NoiseClass noise_class = NoiseClass::Depolarizing;
    double delta = 0;
    double bound_E = 0;
    /// p_bar_c > p; the ratio is kept.
    bool ratio_above_one = false;
    RBData baseline;
    RBData interleaved;
};

/// Baseline RB, then RB with the recipe's Clifford after every random
/// Clifford. Throws std::invalid_argument when the recipe fails
/// verify_synthesis or its product is not a Clifford.
IrbEstimate run_irbgs(const IrbgsConfig &config);

}  // namespace rbsv

#endif
