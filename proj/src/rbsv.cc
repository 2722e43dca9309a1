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

#include "rbsv/rbsv.h"

#include <algorithm>
#include <cmath>

#include "rbsv/parallel.h"
#include "rbsv/seeding.h"
#include "rbsv/stabilizer_tableau.h"

namespace rbsv {

namespace {

bool sequence_is_pauli_diagonal(const SequenceSpec &spec) {
    for (const auto &e : spec.elements) {
        for (const auto &ch : e.noise) {
            if (!is_pauli_diagonal(ch)) {
                return false;
            }
        }
    }
    return is_pauli_diagonal(spec.spam.prep) && is_pauli_diagonal(spec.spam.meas);
}

// Uniform subset of the n generators as a selection mask, optionally nonempty.
void sample_selection(std::mt19937_64 &rng, std::vector<bool> &selection, bool include_identity) {
    while (true) {
        bool any = false;
        for (size_t k = 0; k < selection.size(); k += 64) {
            uint64_t bits = rng();
            for (size_t b = 0; b < 64 && k + b < selection.size(); b++) {
                selection[k + b] = (bits >> b) & 1;
                any |= selection[k + b];
            }
        }
        if (include_identity || any) {
            return;
        }
    }
}

}  // namespace

double fidelity_lower_bound(double p_acc, double r_copies) {
    if (p_acc == 0) {
        throw FailureSignature("acceptance probability is zero: every verification round failed");
    }
    if (!(p_acc > 0 && p_acc <= 1)) {
        throw std::invalid_argument("acceptance probability must lie in (0, 1]");
    }
    if (!(r_copies > 0)) {
        throw std::invalid_argument("copy count R must be positive");
    }
    return 1 - std::exp(-r_copies * std::log(p_acc)) / r_copies;
}

OptimalR optimal_R(double p_acc, double cap) {
    if (!(p_acc > 0 && p_acc <= 1)) {
        throw std::invalid_argument("acceptance probability must lie in (0, 1]");
    }
    if (!(cap > 0)) {
        throw std::invalid_argument("R cap must be positive");
    }
    if (p_acc == 1) {
        return {cap, true};
    }
    const double r = 1 / std::log(1 / p_acc);
    if (r > cap) {
        return {cap, true};
    }
    return {r, false};
}

double drift(double p_acc, double r_copies, double true_fidelity) {
    return std::abs(fidelity_lower_bound(p_acc, r_copies) - true_fidelity);
}

void RBSVConfig::validate() const {
    RBConfig check = base;
    check.shots = std::max<size_t>(1, check.shots);
    check.validate();
    if (base.interleaved) {
        throw std::invalid_argument("RBSV does not take an interleaved element");
    }
    if (repetitions < 1) {
        throw std::invalid_argument("N_m must be at least 1");
    }
    if (r_policy.kind == RPolicy::Kind::Fixed && !(r_policy.fixed_R > 0)) {
        throw std::invalid_argument("fixed R must be positive");
    }
    if (!(r_policy.cap > 0)) {
        throw std::invalid_argument("R cap must be positive");
    }
}

AcceptanceRecord run_rbsv_sequence(const SequenceSpec &seq, size_t repetitions, std::mt19937_64 &rng,
                                   const RBSVSequenceOptions &options) {
    if (repetitions < 1) {
        throw std::invalid_argument("N_m must be at least 1");
    }
    seq.validate();
    AcceptanceRecord rec;
    rec.m = static_cast<int>(seq.elements.size());
    rec.repetitions = repetitions;
    const size_t n = seq.num_qubits;

    if (options.exact || !sequence_is_pauli_diagonal(seq)) {
        if (n > kMaxExactQubits) {
            throw UnsupportedForTrajectory("non-Pauli noise needs the exact engine, which supports at most " +
                                           std::to_string(kMaxExactQubits) + " qubits");
        }
        DensityMatrix rho = run_sequence_exact(seq);
        auto group = stabilizer_group(seq.ideal_product());
        std::vector<double> success;
        for (const auto &s : group) {
            if (!options.include_identity && s.is_identity_up_to_phase()) {
                continue;
            }
            success.push_back(measurement_success_probability(rho, s, seq.spam));
        }
        if (options.exact) {
            double total = 0;
            for (double v : success) {
                total += v;
            }
            rec.exact = true;
            rec.p_acc_hat = total / static_cast<double>(success.size());
            rec.exact_fidelity = rho.fidelity_with(ideal_state(seq));
            return rec;
        }
        std::uniform_int_distribution<size_t> pick(0, success.size() - 1);
        for (size_t k = 0; k < repetitions; k++) {
            const double p = std::clamp(success[pick(rng)], 0.0, 1.0);
            rec.accepted += std::bernoulli_distribution(p)(rng) ? 1 : 0;
        }
        rec.p_acc_hat = static_cast<double>(rec.accepted) / static_cast<double>(repetitions);
        return rec;
    }

    FrameSimulator sim(seq);
    const auto &gens = sim.final_stabilizers();
    const size_t words = (n + 63) / 64;
    std::vector<uint64_t> sx(words), sz(words);
    std::vector<bool> selection(n);
    for (size_t k = 0; k < repetitions; k++) {
        sample_selection(rng, selection, options.include_identity);
        std::fill(sx.begin(), sx.end(), 0);
        std::fill(sz.begin(), sz.end(), 0);
        for (size_t g = 0; g < n; g++) {
            if (selection[g]) {
                for (size_t w = 0; w < words; w++) {
                    sx[w] ^= gens[g].x_words()[w];
                    sz[w] ^= gens[g].z_words()[w];
                }
            }
        }
        sim.sample_frame(rng);
        rec.accepted += sim.accept_stabilizer_bits(sx.data(), sz.data(), rng) ? 1 : 0;
    }
    rec.p_acc_hat = static_cast<double>(rec.accepted) / static_cast<double>(repetitions);
    return rec;
}

RBSVResult run_rbsv(const RBSVConfig &config) {
    config.validate();
    const RBConfig &base = config.base;
    const size_t k_m = base.sequences_per_length;
    const size_t tasks = base.lengths.size() * k_m;
    std::vector<AcceptanceRecord> records(tasks);
    RBSVSequenceOptions options{base.exact, config.include_identity};
    parallel_for(tasks, base.threads, [&](size_t task) {
        const int m = base.lengths[task / k_m];
        std::mt19937_64 seq_rng(seed_plan(base.seed, task, kSequenceStream));
        std::mt19937_64 noise_rng(seed_plan(base.seed, task, kNoiseStream));
        SequenceSpec spec = build_sequence(base, m, false, seq_rng);
        records[task] = run_rbsv_sequence(spec, config.repetitions, noise_rng, options);
        records[task].j = task % k_m;
        records[task].m = m;
    });

    RBSVResult result;
    result.num_qubits = base.num_qubits;
    if (!base.exact && config.repetitions < base.dim()) {
        result.warnings.push_back("N_m = " + std::to_string(config.repetitions) +
                                  " is below the stabilizer group size 2^n = " + std::to_string(base.dim()));
    }
    std::vector<DecayPoint> points;
    for (size_t li = 0; li < base.lengths.size(); li++) {
        RBSVLengthData row;
        row.m = base.lengths[li];
        double sum_p = 0, sum_r = 0, sum_f = 0;
        for (size_t j = 0; j < k_m; j++) {
            const AcceptanceRecord &rec = records[li * k_m + j];
            if (rec.p_acc_hat == 0) {
                throw FailureSignature("sequence " + std::to_string(j) + " at m = " + std::to_string(row.m) +
                                       " rejected every repetition");
            }
            OptimalR r;
            if (config.r_policy.kind == RPolicy::Kind::Optimal) {
                r = optimal_R(rec.p_acc_hat, config.r_policy.cap);
            } else {
                r.R = config.r_policy.fixed_R;
            }
            const double bound = fidelity_lower_bound(rec.p_acc_hat, r.R);
            row.records.push_back(rec);
            row.bounds.push_back(bound);
            row.R.push_back(r.R);
            row.n_saturated += r.saturated ? 1 : 0;
            sum_p += rec.p_acc_hat;
            sum_r += r.R;
            sum_f += bound;
        }
        const double k = static_cast<double>(k_m);
        row.F_bar = sum_f / k;
        row.mean_p_acc = sum_p / k;
        row.mean_R = sum_r / k;
        if (k_m > 1) {
            double ss = 0;
            for (double b : row.bounds) {
                ss += (b - row.F_bar) * (b - row.F_bar);
            }
            row.stderr_ = std::sqrt(ss / (k - 1) / k);
        }
        points.push_back(DecayPoint{static_cast<double>(row.m), row.F_bar, row.stderr_});
        result.lengths.push_back(std::move(row));
    }
    if (points.size() >= 3) {
        result.fit = protocol_fit(points, base);
        result.degenerate = result.fit.degenerate;
        double p = result.fit.p;
        if (base.mode == SequenceMode::Generator) {
            p = std::pow(p, 1.0 / static_cast<double>(base.mixing_length));
        }
        result.r_rbsv = r_from_p(p, static_cast<double>(base.dim()));
    } else {
        result.warnings.push_back("fewer than 3 lengths: no decay fit");
    }
    return result;
}

void write_rbsv_csv(std::ostream &out, const RBSVResult &result) {
    out << "m,F_bar_m,mean_p_acc,mean_R,n_saturated\n";
    for (const auto &row : result.lengths) {
        out << row.m << "," << format_double(row.F_bar) << "," << format_double(row.mean_p_acc) << ","
            << format_double(row.mean_R) << "," << row.n_saturated << "\n";
    }
}

}  // namespace rbsv
