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

#include "rbsv/rb.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rbsv/parallel.h"
#include "rbsv/seeding.h"

namespace rbsv {

namespace {

bool all_pauli_diagonal(const SequenceSpec &spec) {
    for (const auto &e : spec.elements) {
        for (const auto &ch : e.noise) {
            if (!is_pauli_diagonal(ch)) {
                return false;
            }
        }
    }
    return is_pauli_diagonal(spec.spam.prep) && is_pauli_diagonal(spec.spam.meas);
}

double mean_of(const std::vector<double> &v) {
    double s = 0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double> &v, double mean) {
    if (v.size() < 2) {
        return 0;
    }
    double s = 0;
    for (double x : v) {
        s += (x - mean) * (x - mean);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

void RBConfig::validate() const {
    if (num_qubits == 0) {
        throw std::invalid_argument("n must be at least 1");
    }
    if (lengths.empty()) {
        throw std::invalid_argument("lengths must be nonempty");
    }
    for (int m : lengths) {
        if (m < 1) {
            throw std::invalid_argument("every length must be at least 1");
        }
    }
    if (sequences_per_length < 1) {
        throw std::invalid_argument("K_m must be at least 1");
    }
    if (!exact && shots < 1) {
        throw std::invalid_argument("shots must be at least 1 in sampled mode");
    }
    if (mode == SequenceMode::Generator && mixing_length < 1) {
        throw std::invalid_argument("generator mode needs mixing length b >= 1");
    }
    if (exact && num_qubits > kMaxExactQubits) {
        throw std::invalid_argument("exact mode supports at most " + std::to_string(kMaxExactQubits) + " qubits");
    }
    validate_channel(noise.gate, num_qubits);
    validate_channel(noise.inverse_channel(), num_qubits);
    noise.spam.validate(num_qubits);
    if (interleaved) {
        if (interleaved->element.num_qubits() != num_qubits) {
            throw std::invalid_argument("interleaved element size does not match n");
        }
        for (const auto &ch : interleaved->noise) {
            validate_channel(ch, num_qubits);
        }
    }
}

RBSequence sample_rb_sequence(size_t num_qubits, int m, std::mt19937_64 &rng) {
    if (m < 1) {
        throw std::invalid_argument("sequence length must be at least 1");
    }
    RBSequence out;
    CliffordElement product = CliffordElement::identity(num_qubits);
    for (int k = 0; k < m; k++) {
        out.elements.push_back(random_clifford(num_qubits, rng));
        product = compose(product, out.elements.back());
    }
    out.inverse = inverse(product);
    return out;
}

std::vector<GeneratorGate> sample_generator_sequence(size_t num_qubits, size_t b, int m, std::mt19937_64 &rng) {
    if (b < 1) {
        throw std::invalid_argument("mixing length b must be at least 1");
    }
    const auto gens = generator_set(num_qubits);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::vector<GeneratorGate> out;
    out.reserve(b * static_cast<size_t>(std::max(m, 0)));
    for (size_t k = 0; k < b * static_cast<size_t>(std::max(m, 0)); k++) {
        out.push_back(gens[pick(rng)]);
    }
    return out;
}

SequenceSpec build_sequence(const RBConfig &config, int m, bool with_inverse, std::mt19937_64 &seq_rng) {
    const size_t n = config.num_qubits;
    SequenceSpec spec;
    spec.num_qubits = n;
    spec.spam = config.noise.spam;
    CliffordElement product = CliffordElement::identity(n);
    auto push = [&](CliffordElement c, std::vector<NoiseChannel> noise) {
        product = compose(product, c);
        spec.elements.push_back(NoisyElement{std::move(c), std::move(noise)});
    };
    if (config.mode == SequenceMode::Generator) {
        for (const auto &g : sample_generator_sequence(n, config.mixing_length, m, seq_rng)) {
            push(CliffordElement::from_gate(g, n), {config.noise.gate});
        }
    } else {
        for (int k = 0; k < m; k++) {
            push(random_clifford(n, seq_rng), {config.noise.gate});
            if (config.interleaved) {
                push(config.interleaved->element, config.interleaved->noise);
            }
        }
    }
    if (with_inverse) {
        spec.elements.push_back(NoisyElement{inverse(product), {config.noise.inverse_channel()}});
    }
    return spec;
}

double sequence_survival(const SequenceSpec &spec, bool exact, size_t shots, std::mt19937_64 &noise_rng) {
    if (exact) {
        return survival_probability(run_sequence_exact(spec), spec.spam);
    }
    if (all_pauli_diagonal(spec)) {
        FrameSimulator sim(spec);
        size_t survived = 0;
        for (size_t k = 0; k < shots; k++) {
            sim.sample_frame(noise_rng);
            survived += sim.survived(noise_rng) ? 1 : 0;
        }
        return static_cast<double>(survived) / static_cast<double>(shots);
    }
    if (spec.num_qubits > kMaxExactQubits) {
        throw UnsupportedForTrajectory("non-Pauli noise on more than " + std::to_string(kMaxExactQubits) +
                                       " qubits is not supported");
    }
    // Non-Pauli noise: Bernoulli shots around the exact probability.
    const double p = std::clamp(survival_probability(run_sequence_exact(spec), spec.spam), 0.0, 1.0);
    std::binomial_distribution<size_t> draws(shots, p);
    return static_cast<double>(draws(noise_rng)) / static_cast<double>(shots);
}

DecayFit protocol_fit(const std::vector<DecayPoint> &points, const RBConfig &config) {
    FitOptions options;
    options.use_stderr_weights = config.weighted_fit;
    options.a_bounds = config.fit_a_bounds;
    options.b_bounds = config.fit_b_bounds;
    for (const auto &pt : points) {
        options.use_stderr_weights = options.use_stderr_weights && pt.stderr_ > kMinFitStderr;
    }
    return fit_decay(points, options);
}

RBData run_standard_rb(const RBConfig &config) {
    config.validate();
    const size_t k_m = config.sequences_per_length;
    const size_t tasks = config.lengths.size() * k_m;
    std::vector<double> values(tasks);
    parallel_for(tasks, config.threads, [&](size_t task) {
        const int m = config.lengths[task / k_m];
        std::mt19937_64 seq_rng(seed_plan(config.seed, task, kSequenceStream));
        std::mt19937_64 noise_rng(seed_plan(config.seed, task, kNoiseStream));
        SequenceSpec spec = build_sequence(config, m, true, seq_rng);
        values[task] = sequence_survival(spec, config.exact, config.shots, noise_rng);
    });

    RBData data;
    data.num_qubits = config.num_qubits;
    data.exact = config.exact;
    std::vector<DecayPoint> points;
    for (size_t li = 0; li < config.lengths.size(); li++) {
        RBLengthData row;
        row.m = config.lengths[li];
        row.per_sequence.assign(values.begin() + static_cast<std::ptrdiff_t>(li * k_m),
                                values.begin() + static_cast<std::ptrdiff_t>((li + 1) * k_m));
        row.mean = mean_of(row.per_sequence);
        row.stderr_ = stderr_of(row.per_sequence, row.mean);
        row.shots = config.exact ? 0 : config.shots;
        points.push_back(DecayPoint{static_cast<double>(row.m), row.mean, row.stderr_});
        data.lengths.push_back(std::move(row));
    }
    if (points.size() >= 3) {
        data.fit = protocol_fit(points, config);
        data.p = data.fit.p;
        if (config.mode == SequenceMode::Generator) {
            data.p = std::pow(data.fit.p, 1.0 / static_cast<double>(config.mixing_length));
        }
        data.r = r_from_p(data.p, static_cast<double>(config.dim()));
    }
    return data;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_rb_csv(std::ostream &out, const RBData &data) {
    out << "m,P_m,stderr,K_m,shots\n";
    for (const auto &row : data.lengths) {
        out << row.m << "," << format_double(row.mean) << "," << format_double(row.stderr_) << ","
            << row.per_sequence.size() << "," << row.shots << "\n";
    }
}

}  // namespace rbsv
