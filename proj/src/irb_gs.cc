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

#include "rbsv/irb_gs.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rbsv/clifford.h"

namespace rbsv {

namespace {

using nlohmann::json;

Complex root_of_unity(int k) {
    return std::polar(1.0, 2 * std::numbers::pi / std::ldexp(1.0, k));
}

const char *kind_name(RecipeGateKind kind) {
    switch (kind) {
        case RecipeGateKind::CP:
            return "CP";
        case RecipeGateKind::CPDAG:
            return "CPDAG";
        case RecipeGateKind::H:
            return "H";
        case RecipeGateKind::P:
            return "P";
        case RecipeGateKind::PDAG:
            return "PDAG";
        case RecipeGateKind::X:
            return "X";
    }
    return "?";
}

RecipeGateKind kind_from_name(const std::string &s) {
    for (auto k : {RecipeGateKind::CP, RecipeGateKind::CPDAG, RecipeGateKind::H, RecipeGateKind::P,
                   RecipeGateKind::PDAG, RecipeGateKind::X}) {
        if (s == kind_name(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown recipe gate '" + s + "'");
}

RecipeGate one(RecipeGateKind kind, uint32_t q) {
    return RecipeGate{kind, {q}, 2};
}

RecipeGate cp(int k = 2) {
    return RecipeGate{RecipeGateKind::CP, {0, 1}, k};
}

RecipeGate cpdag(int k = 2) {
    return RecipeGate{RecipeGateKind::CPDAG, {0, 1}, k};
}

Matrix single_from_name(std::string_view s) {
    if (s == "I") {
        return mat_i();
    }
    if (s == "X") {
        return mat_x();
    }
    if (s == "H") {
        return mat_h();
    }
    if (s == "P") {
        return mat_p();
    }
    if (s == "PDAG") {
        return mat_p().adjoint();
    }
    if (s.size() > 3 && s.substr(0, 2) == "P(" && s.back() == ')') {
        const std::string digits(s.substr(2, s.size() - 3));
        size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(digits, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == digits.size() && used > 0) {
            return pk_matrix(k);
        }
    }
    throw std::invalid_argument("unknown single-qubit factor '" + std::string(s) + "'");
}

SynthesisRecipe make(std::string name, std::string target, std::vector<RecipeGate> gates) {
    SynthesisRecipe r;
    r.name = std::move(name);
    r.target = target_from_name(target);
    r.target_name = std::move(target);
    r.gates = std::move(gates);
    return r;
}

void append_block(std::vector<RecipeGate> &gates, int k) {
    gates.push_back(cp(k));
    gates.push_back(one(RecipeGateKind::X, 0));
    gates.push_back(cp(k));
    gates.push_back(one(RecipeGateKind::X, 0));
}

}  // namespace

Matrix cp_matrix(int k) {
    if (k < 1) {
        throw std::invalid_argument("CP(k) needs k >= 1");
    }
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = root_of_unity(k);
    return m;
}

Matrix pk_matrix(int k) {
    if (k < 1) {
        throw std::invalid_argument("P(k) needs k >= 1");
    }
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = root_of_unity(k);
    return m;
}

Matrix RecipeGate::to_matrix() const {
    switch (kind) {
        case RecipeGateKind::CP:
            return cp_matrix(k);
        case RecipeGateKind::CPDAG:
            return cp_matrix(k).adjoint();
        case RecipeGateKind::H:
            return embed_single(mat_h(), qubits.at(0), 2);
        case RecipeGateKind::P:
            return embed_single(mat_p(), qubits.at(0), 2);
        case RecipeGateKind::PDAG:
            return embed_single(mat_p().adjoint(), qubits.at(0), 2);
        case RecipeGateKind::X:
            return embed_single(mat_x(), qubits.at(0), 2);
    }
    throw std::logic_error("unhandled recipe gate");
}

size_t SynthesisRecipe::nonclifford_count() const {
    size_t c = 0;
    for (const auto &g : gates) {
        c += g.is_nonclifford_slot() ? 1 : 0;
    }
    return c;
}

void SynthesisRecipe::validate() const {
    if (target.rows() != 4 || target.cols() != 4) {
        throw std::invalid_argument("recipe '" + name + "': target must be 4x4");
    }
    for (const auto &g : gates) {
        const size_t want = g.is_nonclifford_slot() ? 2 : 1;
        if (g.qubits.size() != want) {
            throw std::invalid_argument("recipe '" + name + "': " + kind_name(g.kind) + " takes " +
                                        std::to_string(want) + " qubit index(es)");
        }
        for (uint32_t q : g.qubits) {
            if (q > 1) {
                throw std::invalid_argument("recipe '" + name + "': qubit index out of range");
            }
        }
        if (want == 2 && g.qubits[0] == g.qubits[1]) {
            throw std::invalid_argument("recipe '" + name + "': CP needs distinct qubits");
        }
        if (g.is_nonclifford_slot() && g.k < 1) {
            throw std::invalid_argument("recipe '" + name + "': CP(k) needs k >= 1");
        }
    }
}

Matrix SynthesisRecipe::product() const {
    validate();
    Matrix u = Matrix::Identity(4, 4);
    for (const auto &g : gates) {
        u = g.to_matrix() * u;
    }
    return u;
}

Matrix target_from_name(std::string_view name) {
    if (name == "CNOT") {
        return GeneratorGate::cnot(0, 1).to_matrix(2);
    }
    const size_t star = name.find('*');
    if (star == std::string_view::npos) {
        throw std::invalid_argument("unknown target '" + std::string(name) + "'");
    }
    return kron(single_from_name(name.substr(0, star)), single_from_name(name.substr(star + 1)));
}

SynthesisCheck verify_synthesis(const SynthesisRecipe &recipe, double tolerance) {
    const Matrix u = recipe.product();
    SynthesisCheck check;
    check.max_deviation = max_deviation_up_to_phase(u, recipe.target);
    check.pass = check.max_deviation <= tolerance;
    return check;
}

std::vector<SynthesisRecipe> generator_recipes() {
    using K = RecipeGateKind;
    std::vector<SynthesisRecipe> out;
    out.push_back(make("I*P", "I*P", {cp(), one(K::X, 0), cp(), one(K::X, 0)}));
    out.push_back(make("P*P", "P*P", {one(K::X, 0), one(K::X, 1), cpdag(), one(K::X, 0), one(K::X, 1), cp()}));
    out.push_back(make("CNOT", "CNOT",
                       {one(K::H, 1), cpdag(), one(K::X, 1), cp(), one(K::PDAG, 0), one(K::X, 1), one(K::H, 1)}));
    out.push_back(
        make("I*H", "I*H", {one(K::H, 1), cp(), one(K::X, 1), cp(), one(K::PDAG, 0), one(K::X, 1)}));
    out.push_back(make("H*H", "H*H",
                       {one(K::H, 0), one(K::H, 1), cp(), one(K::X, 1), cp(), one(K::PDAG, 0), one(K::X, 1)}));
    out.push_back(make("I*PDAG", "I*PDAG", {cpdag(), one(K::X, 0), cpdag(), one(K::X, 0)}));
    out.push_back(make("PDAG*PDAG", "PDAG*PDAG",
                       {one(K::X, 0), one(K::X, 1), cp(), one(K::X, 0), one(K::X, 1), cpdag()}));
    return out;
}

SynthesisRecipe cp_block_recipe(int k) {
    std::vector<RecipeGate> gates;
    append_block(gates, k);
    return make("cp_block(" + std::to_string(k) + ")", "I*P(" + std::to_string(k) + ")", std::move(gates));
}

SynthesisRecipe cp_pair_recipe(int k) {
    if (k < 2) {
        throw std::invalid_argument("I*P(k-1) needs k >= 2");
    }
    std::vector<RecipeGate> gates;
    append_block(gates, k);
    append_block(gates, k);
    return make("cp_pair(" + std::to_string(k) + ")", "I*P(" + std::to_string(k - 1) + ")", std::move(gates));
}

SynthesisRecipe p2_chain_recipe(int k) {
    if (k < 2 || k > 20) {
        throw std::invalid_argument("I*P(2) chain needs 2 <= k <= 20");
    }
    std::vector<RecipeGate> gates;
    for (int b = 0; b < (1 << (k - 2)); b++) {
        append_block(gates, k);
    }
    return make("p2_chain(" + std::to_string(k) + ")", "I*P(2)", std::move(gates));
}

std::vector<SynthesisRecipe> parse_recipes(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("recipe file: ") + e.what());
    }
    if (!doc.is_array()) {
        throw std::invalid_argument("recipe file: top level must be an array");
    }
    std::vector<SynthesisRecipe> out;
    for (size_t i = 0; i < doc.size(); i++) {
        const json &entry = doc[i];
        const std::string where = "recipe file: entry " + std::to_string(i);
        try {
            SynthesisRecipe r;
            r.name = entry.value("name", "recipe" + std::to_string(i));
            const json &target = entry.at("target");
            if (target.is_string()) {
                r.target_name = target.get<std::string>();
                r.target = target_from_name(r.target_name);
            } else {
                if (!target.is_array() || target.size() != 16) {
                    throw std::invalid_argument("target must be a name or 16 [re, im] pairs");
                }
                r.target = Matrix(4, 4);
                for (size_t e = 0; e < 16; e++) {
                    const json &z = target[e];
                    if (!z.is_array() || z.size() != 2) {
                        throw std::invalid_argument("target entry " + std::to_string(e) + " must be [re, im]");
                    }
                    r.target(static_cast<Eigen::Index>(e / 4), static_cast<Eigen::Index>(e % 4)) =
                        Complex(z[0].get<double>(), z[1].get<double>());
                }
            }
            for (const json &g : entry.at("gates")) {
                RecipeGate gate{kind_from_name(g.at("gate").get<std::string>()),
                                g.at("qubits").get<std::vector<uint32_t>>(), g.value("k", 2)};
                r.gates.push_back(std::move(gate));
            }
            r.validate();
            if (entry.contains("L") && entry.at("L").get<size_t>() != r.nonclifford_count()) {
                throw std::invalid_argument("L = " + std::to_string(entry.at("L").get<size_t>()) +
                                            " but the circuit has " + std::to_string(r.nonclifford_count()) +
                                            " CP gates");
            }
            out.push_back(std::move(r));
        } catch (const json::exception &e) {
            throw std::invalid_argument(where + ": " + e.what());
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument(where + ": " + e.what());
        }
    }
    return out;
}

std::string format_recipes(const std::vector<SynthesisRecipe> &recipes) {
    json doc = json::array();
    for (const auto &r : recipes) {
        json entry;
        entry["name"] = r.name;
        if (!r.target_name.empty()) {
            entry["target"] = r.target_name;
        } else {
            json t = json::array();
            for (Eigen::Index row = 0; row < 4; row++) {
                for (Eigen::Index col = 0; col < 4; col++) {
                    t.push_back({r.target(row, col).real(), r.target(row, col).imag()});
                }
            }
            entry["target"] = t;
        }
        entry["L"] = r.nonclifford_count();
        json gates = json::array();
        for (const auto &g : r.gates) {
            json jg{{"gate", kind_name(g.kind)}, {"qubits", g.qubits}};
            if (g.is_nonclifford_slot()) {
                jg["k"] = g.k;
            }
            gates.push_back(jg);
        }
        entry["gates"] = gates;
        doc.push_back(entry);
    }
    return doc.dump(2) + "\n";
}

double irb_estimate(double p, double p_bar_c, double d) {
    if (p == 0) {
        throw std::invalid_argument("baseline p must be nonzero");
    }
    return (d - 1) * (1 - p_bar_c / p) / d;
}

double irbgs_estimate(double p, double p_bar_c, double d, size_t nonclifford_count) {
    if (nonclifford_count < 1) {
        throw std::invalid_argument("L must be at least 1");
    }
    if (p == 0) {
        throw std::invalid_argument("baseline p must be nonzero");
    }
    const double ratio = p_bar_c / p;
    if (!(ratio > 0)) {
        throw std::invalid_argument("p_bar_c / p must be positive");
    }
    return (d - 1) / d * (1 - std::pow(ratio, 1.0 / static_cast<double>(nonclifford_count)));
}

std::string noise_class_name(NoiseClass c) {
    switch (c) {
        case NoiseClass::Depolarizing:
            return "depolarizing";
        case NoiseClass::Delta:
            return "delta";
        case NoiseClass::Pauli:
            return "pauli";
    }
    return "?";
}

namespace {

void check_bound_inputs(double p, double d) {
    if (!(p > 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in (0, 1]");
    }
    if (!(d >= 2)) {
        throw std::invalid_argument("dimension must be at least 2");
    }
}

}  // namespace

double e_prime(double p, double d) {
    check_bound_inputs(p, d);
    return 2 * (d * d - 1) * (1 - p) / (d * d) + 4 * std::sqrt(1 - p) * std::sqrt(d * d - 1);
}

double e_double_prime(double p, double d) {
    check_bound_inputs(p, d);
    return 6 * (d * d - 1) * (1 - p) / (d * d) + 4 * std::sqrt(1 - p) * std::sqrt(d * d - 1);
}

double error_bound(NoiseClass noise_class, double p, double d, double delta) {
    check_bound_inputs(p, d);
    const double f = (d - 1) / d;
    switch (noise_class) {
        case NoiseClass::Depolarizing:
            return std::sqrt(f * e_prime(p, d) / p);
        case NoiseClass::Delta:
            if (!(delta >= 0 && delta <= 1)) {
                throw std::invalid_argument("delta must lie in [0, 1]");
            }
            return std::sqrt(f * (e_prime(p, d) + 2 * delta) / p);
        case NoiseClass::Pauli:
            return std::sqrt(f * e_double_prime(p, d) / p);
    }
    throw std::logic_error("unhandled noise class");
}

NoiseClass classify_noise(const NoiseChannel &ch) {
    if (std::holds_alternative<PauliChannel>(ch)) {
        return NoiseClass::Pauli;
    }
    if (std::holds_alternative<DeltaDepolarizing>(ch)) {
        return NoiseClass::Delta;
    }
    return NoiseClass::Depolarizing;
}

IrbgsConfig::IrbgsConfig() : recipe(generator_recipes().front()) {
    base.exact = true;
}

void IrbgsConfig::validate() const {
    if (base.num_qubits != 2) {
        throw std::invalid_argument("iRB+GS recipes act on 2 qubits");
    }
    if (base.mode != SequenceMode::FullClifford) {
        throw std::invalid_argument("iRB+GS interleaves into full-Clifford sequences");
    }
    recipe.validate();
    validate_channel(nonclifford_noise, 2);
    if (single_qubit_noise) {
        validate_channel(*single_qubit_noise, 2);
    }
    RBConfig check = base;
    check.interleaved.reset();
    check.validate();
}

IrbEstimate run_irbgs(const IrbgsConfig &config) {
    config.validate();
    const SynthesisCheck check = verify_synthesis(config.recipe);
    if (!check.pass) {
        throw std::invalid_argument("recipe '" + config.recipe.name +
                                    "' fails verification (max deviation " + std::to_string(check.max_deviation) +
                                    "); refusing to run");
    }
    CliffordElement fixed;
    try {
        fixed = CliffordElement::from_unitary(config.recipe.target);
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("recipe '" + config.recipe.name + "' does not implement a Clifford");
    }

    RBConfig base = config.base;
    base.interleaved.reset();
    Interleaving inter{fixed, {}};
    const size_t l = config.recipe.nonclifford_count();
    for (size_t i = 0; i < l; i++) {
        inter.noise.push_back(config.nonclifford_noise);
    }
    if (config.single_qubit_noise) {
        for (size_t i = l; i < config.recipe.gates.size(); i++) {
            inter.noise.push_back(*config.single_qubit_noise);
        }
    }
    RBConfig with = base;
    with.interleaved = std::move(inter);

    IrbEstimate est;
    est.baseline = run_standard_rb(base);
    est.interleaved = run_standard_rb(with);
    est.p = est.baseline.p;
    est.p_bar_c = est.interleaved.p;
    est.d = static_cast<double>(base.dim());
    est.nonclifford_count = l;
    est.ratio_above_one = est.p_bar_c > est.p;
    est.r_c_est = irb_estimate(est.p, est.p_bar_c, est.d);
    est.r_n_est = l > 0 ? irbgs_estimate(est.p, est.p_bar_c, est.d, l) : 0.0;
    est.noise_class = classify_noise(config.nonclifford_noise);
    if (const auto *dd = std::get_if<DeltaDepolarizing>(&config.nonclifford_noise)) {
        est.delta = dd->delta;
    }
    est.bound_E = error_bound(est.noise_class, est.p, est.d, est.delta);
    return est;
}

}  // namespace rbsv
