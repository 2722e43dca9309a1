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

#include "rbsv/experiment.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace rbsv {

namespace {

using nlohmann::json;

std::string join(const std::string &prefix, const std::string &key) {
    return prefix.empty() ? key : prefix + "." + key;
}

// Typed access to one JSON object, rejecting keys that were never read.
class Fields {
   public:
    Fields(const json &obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
        if (!obj_.is_object()) {
            throw ConfigError(prefix_.empty() ? "config" : prefix_, "must be an object");
        }
    }

    bool has(const std::string &key) {
        known_.insert(key);
        return obj_.contains(key) && !obj_.at(key).is_null();
    }
    const json &raw(const std::string &key) {
        known_.insert(key);
        return obj_.at(key);
    }
    std::string path(const std::string &key) const {
        return join(prefix_, key);
    }

    template <typename T>
    T get(const std::string &key, T fallback) {
        if (!has(key)) {
            return fallback;
        }
        return as<T>(key);
    }
    template <typename T>
    T require(const std::string &key) {
        if (!has(key)) {
            throw ConfigError(path(key), "is required");
        }
        return as<T>(key);
    }

    double number(const std::string &key, double fallback, double lo, double hi) {
        const double v = get<double>(key, fallback);
        if (!(v >= lo && v <= hi)) {
            throw ConfigError(path(key), "must lie in [" + format_double(lo) + ", " + format_double(hi) + "]");
        }
        return v;
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!known_.count(it.key())) {
                throw ConfigError(path(it.key()), "unknown field");
            }
        }
    }

   private:
    template <typename T>
    T as(const std::string &key) {
        const json &v = obj_.at(key);
        try {
            if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
                if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
                    throw ConfigError(path(key), "must be a nonnegative integer");
                }
            } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
                if (!v.is_number_integer()) {
                    throw ConfigError(path(key), "must be an integer");
                }
            }
            return v.get<T>();
        } catch (const json::exception &e) {
            throw ConfigError(path(key), std::string("has the wrong type (") + e.what() + ")");
        }
    }

    const json &obj_;
    std::string prefix_;
    std::set<std::string> known_;
};

std::vector<int> parse_lengths(const json &j, const std::string &field) {
    std::vector<int> out;
    if (j.is_array()) {
        for (size_t i = 0; i < j.size(); i++) {
            if (!j[i].is_number_integer() || j[i].get<int64_t>() < 1) {
                throw ConfigError(field + "[" + std::to_string(i) + "]", "must be a positive integer");
            }
            out.push_back(j[i].get<int>());
        }
    } else if (j.is_object()) {
        Fields f(j, field);
        const int start = f.require<int>("start");
        const int stop = f.require<int>("stop");
        const int step = f.get<int>("step", 1);
        f.finish();
        if (start < 1 || step < 1 || stop < start) {
            throw ConfigError(field, "needs 1 <= start <= stop and step >= 1");
        }
        for (int m = start; m <= stop; m += step) {
            out.push_back(m);
        }
    } else {
        throw ConfigError(field, "must be a list of lengths or {start, stop, step}");
    }
    if (out.empty()) {
        throw ConfigError(field, "must not be empty");
    }
    return out;
}

std::optional<std::array<double, 2>> parse_box(Fields &f, const std::string &key, std::array<double, 2> fallback) {
    if (!f.has(key)) {
        return fallback;
    }
    const json &v = f.raw(key);
    if (v.is_string() && v.get<std::string>() == "free") {
        return std::nullopt;
    }
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number() ||
        !(v[0].get<double>() <= v[1].get<double>())) {
        throw ConfigError(f.path(key), "must be [lower, upper] or \"free\"");
    }
    return std::array<double, 2>{v[0].get<double>(), v[1].get<double>()};
}

SpamModel parse_spam(const json &j, size_t n, const std::string &field) {
    Fields f(j, field);
    SpamModel spam;
    if (f.has("prep")) {
        spam.prep = parse_channel(f.raw("prep"), n, f.path("prep"));
    }
    if (f.has("meas")) {
        spam.meas = parse_channel(f.raw("meas"), n, f.path("meas"));
    }
    spam.p_meas = f.number("p_meas", 0.0, 0.0, 1.0);
    f.finish();
    return spam;
}

// Fields shared by every simulation protocol.
RBConfig parse_common(Fields &f, const RunOverrides &overrides, const char *default_mode) {
    RBConfig c;
    c.num_qubits = f.get<size_t>("n", 2);
    if (c.num_qubits < 1 || c.num_qubits > 4096) {
        throw ConfigError(f.path("n"), "must lie in [1, 4096]");
    }
    if (f.has("lengths")) {
        c.lengths = parse_lengths(f.raw("lengths"), f.path("lengths"));
    } else {
        for (int m = 5; m <= 50; m += 5) {
            c.lengths.push_back(m);
        }
    }
    c.sequences_per_length = f.get<size_t>("K_m", 200);
    if (c.sequences_per_length < 1) {
        throw ConfigError(f.path("K_m"), "must be at least 1");
    }
    const std::string mode = f.get<std::string>("mode", default_mode);
    if (mode != "exact" && mode != "sampled") {
        throw ConfigError(f.path("mode"), "must be \"exact\" or \"sampled\"");
    }
    c.exact = overrides.exact || mode == "exact";
    const std::string seq = f.get<std::string>("sequence_mode", "clifford");
    if (seq == "clifford") {
        c.mode = SequenceMode::FullClifford;
    } else if (seq == "generator") {
        c.mode = SequenceMode::Generator;
    } else {
        throw ConfigError(f.path("sequence_mode"), "must be \"clifford\" or \"generator\"");
    }
    c.mixing_length = f.get<size_t>("mixing_length", 10);
    if (c.mixing_length < 1) {
        throw ConfigError(f.path("mixing_length"), "must be at least 1");
    }
    if (!f.has("noise")) {
        throw ConfigError(f.path("noise"), "is required");
    }
    c.noise.gate = parse_channel(f.raw("noise"), c.num_qubits, f.path("noise"));
    if (f.has("inverse_noise")) {
        c.noise.inverse = parse_channel(f.raw("inverse_noise"), c.num_qubits, f.path("inverse_noise"));
    }
    if (f.has("spam")) {
        c.noise.spam = parse_spam(f.raw("spam"), c.num_qubits, f.path("spam"));
    }
    if (f.has("fit")) {
        Fields fit(f.raw("fit"), f.path("fit"));
        c.weighted_fit = fit.get<bool>("weighted", true);
        c.fit_a_bounds = parse_box(fit, "a_bounds", {0, 1});
        c.fit_b_bounds = parse_box(fit, "b_bounds", {0, 1});
        fit.finish();
    }
    c.seed = f.get<uint64_t>("seed", 0);
    c.threads = f.get<size_t>("threads", 1);
    if (overrides.seed) {
        c.seed = *overrides.seed;
    }
    if (overrides.threads) {
        c.threads = *overrides.threads;
    }
    if (c.threads < 1) {
        throw ConfigError(f.path("threads"), "must be at least 1");
    }
    f.has("protocol");
    f.has("output");
    if (c.exact && c.num_qubits > kMaxExactQubits) {
        throw ConfigError(f.path("mode"), "exact mode supports at most " + std::to_string(kMaxExactQubits) +
                                              " qubits");
    }
    return c;
}

void wrap_validation(const std::function<void()> &check) {
    try {
        check();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError("config", e.what());
    }
}

std::filesystem::path output_dir(const json &config, const RunOverrides &overrides) {
    if (overrides.out_dir) {
        return *overrides.out_dir;
    }
    if (config.is_object() && config.contains("output")) {
        const json &o = config.at("output");
        if (o.is_string()) {
            return o.get<std::string>();
        }
        if (o.is_object() && o.contains("dir") && o.at("dir").is_string()) {
            return o.at("dir").get<std::string>();
        }
        throw ConfigError("output", "must be a directory path or {\"dir\": path}");
    }
    return ".";
}

json fit_json(const DecayFit &fit) {
    return json{{"A0", fit.A0},
                {"B0", fit.B0},
                {"p", fit.p},
                {"p_stderr", std::isfinite(fit.p_stderr) ? json(fit.p_stderr) : json(nullptr)},
                {"residual_rms", fit.residual_rms},
                {"converged", fit.converged},
                {"degenerate", fit.degenerate},
                {"at_boundary", fit.at_boundary},
                {"amplitude_at_bound", fit.amplitude_at_bound},
                {"iterations", fit.iterations}};
}

void write_file(const std::filesystem::path &path, const std::string &text, RunResult &result) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
    result.files.push_back(path);
}

std::string rb_csv(const RBData &d) {
    std::ostringstream s;
    write_rb_csv(s, d);
    return s.str();
}

std::string rbsv_csv(const RBSVResult &r) {
    std::ostringstream s;
    write_rbsv_csv(s, r);
    return s.str();
}

json saturation_json(const RBSVResult &r) {
    json per = json::array();
    size_t total = 0;
    for (const auto &row : r.lengths) {
        per.push_back({{"m", row.m}, {"n_saturated", row.n_saturated}});
        total += row.n_saturated;
    }
    return json{{"total", total}, {"per_length", per}};
}

json rb_summary(const RBData &d) {
    return json{{"r_rb", d.r}, {"p_rb", d.p}, {"fit_rb", fit_json(d.fit)}};
}

json rbsv_summary(const RBSVResult &r) {
    return json{{"r_rbsv", r.r_rbsv}, {"fit_rbsv", fit_json(r.fit)}, {"saturation", saturation_json(r)}};
}

std::vector<SynthesisRecipe> recipes_from(const json &config) {
    if (config.is_null() || (config.is_object() && config.empty())) {
        return generator_recipes();
    }
    if (config.is_array()) {
        try {
            return parse_recipes(config.dump());
        } catch (const std::invalid_argument &e) {
            throw ConfigError("recipes", e.what());
        }
    }
    Fields f(config, "");
    if (f.has("recipes")) {
        const auto out = recipes_from(f.raw("recipes"));
        f.has("output");
        f.finish();
        return out;
    }
    if (f.has("recipes_file")) {
        const auto path = f.raw("recipes_file").get<std::string>();
        f.has("output");
        f.finish();
        return recipes_from(load_json_file(path));
    }
    throw ConfigError("recipes", "give a recipe array, {\"recipes\": [...]} or {\"recipes_file\": path}");
}

SynthesisRecipe select_recipe(const json &j, const std::string &field) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        for (const auto &r : generator_recipes()) {
            if (r.name == name) {
                return r;
            }
        }
        if (name.rfind("p2_chain(", 0) == 0 || name.rfind("cp_pair(", 0) == 0 || name.rfind("cp_block(", 0) == 0) {
            const size_t open = name.find('('), close = name.find(')');
            if (close != std::string::npos && close > open + 1) {
                const int k = std::stoi(name.substr(open + 1, close - open - 1));
                if (name[0] == 'p') {
                    return p2_chain_recipe(k);
                }
                return name.rfind("cp_block(", 0) == 0 ? cp_block_recipe(k) : cp_pair_recipe(k);
            }
        }
        throw ConfigError(field, "unknown bundled recipe '" + name + "'");
    }
    if (j.is_object()) {
        try {
            auto list = parse_recipes(json::array({j}).dump());
            return list.front();
        } catch (const std::invalid_argument &e) {
            throw ConfigError(field, e.what());
        }
    }
    throw ConfigError(field, "must be a bundled recipe name or a recipe object");
}

void check_protocol(const json &config, std::string_view subcommand) {
    if (!config.is_object()) {
        throw ConfigError("config", "must be an object");
    }
    if (!config.contains("protocol") || !config.at("protocol").is_string()) {
        throw ConfigError("protocol", "is required (rb, rbsv, irbgs or compare)");
    }
    const std::string p = config.at("protocol").get<std::string>();
    if (p != "rb" && p != "rbsv" && p != "irbgs" && p != "compare") {
        throw ConfigError("protocol", "must be rb, rbsv, irbgs or compare");
    }
    const bool ok = p == subcommand || (subcommand == "compare" && (p == "rb" || p == "rbsv"));
    if (!ok) {
        throw ConfigError("protocol", "'" + p + "' does not match subcommand '" + std::string(subcommand) + "'");
    }
}

json reproducibility(const json &config, uint64_t seed, size_t threads) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(config)));
    return json{{"seed", seed},
                {"threads", threads},
                {"config_hash", hash},
                {"version", kVersion},
                {"schema_version", kOutputSchemaVersion}};
}

}  // namespace

json load_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error &e) {
        throw ConfigError("config", std::string("invalid JSON in ") + path.string() + ": " + e.what());
    }
}

NoiseChannel parse_channel(const json &j, size_t num_qubits, const std::string &field) {
    Fields f(j, field);
    const std::string kind = f.require<std::string>("kind");
    NoiseChannel ch;
    if (kind == "ideal") {
        ch = Ideal{};
    } else if (kind == "depolarizing") {
        ch = Depolarizing{f.number("epsilon", 0.0, 0.0, 1.0)};
    } else if (kind == "pauli") {
        if (!f.has("table") || !f.raw("table").is_object()) {
            throw ConfigError(f.path("table"), "is required: an object of Pauli string -> probability");
        }
        std::map<std::string, double> table;
        double total = 0;
        const std::string identity(num_qubits, 'I');
        for (auto it = f.raw("table").begin(); it != f.raw("table").end(); ++it) {
            if (!it.value().is_number() || !(it.value().get<double>() >= 0)) {
                throw ConfigError(f.path("table") + "." + it.key(), "must be a nonnegative probability");
            }
            if (it.key().size() != num_qubits) {
                throw ConfigError(f.path("table") + "." + it.key(),
                                  "must have " + std::to_string(num_qubits) + " letters");
            }
            table[it.key()] = it.value().get<double>();
            total += it.value().get<double>();
        }
        if (total > 1 + 1e-12) {
            throw ConfigError(f.path("table"), "probabilities sum above 1");
        }
        if (!table.count(identity) && total < 1) {
            table[identity] = 1 - total;
        }
        try {
            ch = PauliChannel::from_table(table);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(f.path("table"), e.what());
        }
    } else if (kind == "delta") {
        DeltaDepolarizing d;
        d.delta = f.number("delta", 0.0, 0.0, 1.0);
        d.p_prime = f.number("p_prime", 1.0, 0.0, 1.0);
        if (f.has("perturbation")) {
            Fields pf(f.raw("perturbation"), f.path("perturbation"));
            const std::string axis = pf.get<std::string>("axis", "x");
            if (axis != "x" && axis != "y" && axis != "z") {
                throw ConfigError(pf.path("axis"), "must be x, y or z");
            }
            const double angle = pf.require<double>("angle");
            pf.finish();
            d.perturbation = rotation_perturbation(num_qubits, axis[0], angle);
        }
        ch = std::move(d);
    } else {
        throw ConfigError(f.path("kind"), "must be ideal, depolarizing, pauli or delta");
    }
    f.finish();
    try {
        validate_channel(ch, num_qubits);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(field, e.what());
    }
    return ch;
}

RBConfig parse_rb_config(const json &config, const RunOverrides &overrides) {
    Fields f(config, "");
    RBConfig c = parse_common(f, overrides, "sampled");
    c.shots = f.get<size_t>("shots", 100);
    // Keys read by the rbsv parser when the same file drives compare.
    for (const char *k : {"N_m", "R_policy", "include_identity"}) {
        f.has(k);
    }
    f.finish();
    wrap_validation([&] { c.validate(); });
    return c;
}

RBSVConfig parse_rbsv_config(const json &config, const RunOverrides &overrides) {
    Fields f(config, "");
    RBSVConfig c;
    c.base = parse_common(f, overrides, "sampled");
    c.base.shots = f.get<size_t>("shots", 100);
    c.repetitions = f.get<size_t>("N_m", 100);
    if (c.repetitions < 1) {
        throw ConfigError(f.path("N_m"), "must be at least 1");
    }
    c.include_identity = f.get<bool>("include_identity", true);
    if (f.has("R_policy")) {
        Fields rp(f.raw("R_policy"), f.path("R_policy"));
        const std::string kind = rp.get<std::string>("kind", "optimal");
        if (kind == "optimal") {
            c.r_policy.kind = RPolicy::Kind::Optimal;
        } else if (kind == "fixed") {
            c.r_policy.kind = RPolicy::Kind::Fixed;
            c.r_policy.fixed_R = rp.require<double>("R");
            if (!(c.r_policy.fixed_R > 0)) {
                throw ConfigError(rp.path("R"), "must be positive");
            }
        } else {
            throw ConfigError(rp.path("kind"), "must be \"optimal\" or \"fixed\"");
        }
        c.r_policy.cap = rp.get<double>("cap", kDefaultRCap);
        if (!(c.r_policy.cap > 0)) {
            throw ConfigError(rp.path("cap"), "must be positive");
        }
        rp.finish();
    }
    f.finish();
    wrap_validation([&] { c.validate(); });
    return c;
}

IrbgsConfig parse_irbgs_config(const json &config, const RunOverrides &overrides) {
    Fields f(config, "");
    IrbgsConfig c;
    c.base = parse_common(f, overrides, "exact");
    c.base.shots = f.get<size_t>("shots", 100);
    if (f.has("recipe")) {
        c.recipe = select_recipe(f.raw("recipe"), f.path("recipe"));
    }
    if (f.has("nonclifford_noise")) {
        c.nonclifford_noise = parse_channel(f.raw("nonclifford_noise"), 2, f.path("nonclifford_noise"));
    }
    if (f.has("single_qubit_noise")) {
        c.single_qubit_noise = parse_channel(f.raw("single_qubit_noise"), 2, f.path("single_qubit_noise"));
    }
    f.finish();
    wrap_validation([&] { c.validate(); });
    return c;
}

ResourcePlan parse_plan(const json &config) {
    Fields f(config, "");
    ResourcePlan p;
    p.t = f.get<double>("t", p.t);
    p.delta = f.get<double>("delta", p.delta);
    p.lambda = f.get<double>("lambda", p.lambda);
    p.upsilon = f.get<double>("upsilon", p.upsilon);
    p.q = f.get<uint64_t>("q", p.q);
    p.n = f.get<size_t>("n", p.n);
    p.R = f.get<double>("R", p.R);
    p.p_meas = f.get<double>("p_meas", p.p_meas);
    p.regime_constant = f.get<double>("regime_constant", p.regime_constant);
    if (f.has("m")) {
        p.m = f.require<int>("m");
    }
    p.r = f.get<double>("r", p.r);
    p.eta = f.get<double>("eta", p.eta);
    p.with_spam = f.get<bool>("with_spam", p.with_spam);
    f.has("output");
    f.finish();
    wrap_validation([&] { p.validate(); });
    return p;
}

uint64_t config_hash(const json &config) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

RunResult run_subcommand(std::string_view subcommand, const json &config, const RunOverrides &overrides) {
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    json &s = result.summary;
    s["subcommand"] = std::string(subcommand);
    const auto dir = output_dir(config, overrides);

    if (subcommand == "rb") {
        check_protocol(config, subcommand);
        const RBConfig c = parse_rb_config(config, overrides);
        const RBData d = run_standard_rb(c);
        write_file(dir / "rb.csv", rb_csv(d), result);
        s.update(rb_summary(d));
        s["degenerate"] = d.fit.degenerate;
        s["warnings"] = json::array();
        s["reproducibility"] = reproducibility(config, c.seed, c.threads);
    } else if (subcommand == "rbsv") {
        check_protocol(config, subcommand);
        const RBSVConfig c = parse_rbsv_config(config, overrides);
        const RBSVResult r = run_rbsv(c);
        write_file(dir / "rbsv.csv", rbsv_csv(r), result);
        s.update(rbsv_summary(r));
        s["A0"] = r.fit.A0;
        s["B0"] = r.fit.B0;
        s["p"] = r.fit.p;
        s["fit_residual"] = r.fit.residual_rms;
        s["degenerate"] = r.degenerate;
        s["warnings"] = r.warnings;
        s["reproducibility"] = reproducibility(config, c.base.seed, c.base.threads);
    } else if (subcommand == "compare") {
        check_protocol(config, subcommand);
        json as_rb = config;
        as_rb["protocol"] = "rb";
        const RBConfig rc = parse_rb_config(as_rb, overrides);
        const RBSVConfig vc = parse_rbsv_config(as_rb, overrides);
        const RBData d = run_standard_rb(rc);
        const RBSVResult r = run_rbsv(vc);
        write_file(dir / "rb.csv", rb_csv(d), result);
        write_file(dir / "rbsv.csv", rbsv_csv(r), result);
        s.update(rb_summary(d));
        s.update(rbsv_summary(r));
        s["ratio"] = d.r != 0 ? json(r.r_rbsv / d.r) : json(nullptr);
        s["degenerate"] = d.fit.degenerate || r.degenerate;
        s["warnings"] = r.warnings;
        s["reproducibility"] = reproducibility(config, rc.seed, rc.threads);
    } else if (subcommand == "irbgs") {
        check_protocol(config, subcommand);
        const IrbgsConfig c = parse_irbgs_config(config, overrides);
        const IrbEstimate e = run_irbgs(c);
        write_file(dir / "irb_baseline.csv", rb_csv(e.baseline), result);
        write_file(dir / "irb_interleaved.csv", rb_csv(e.interleaved), result);
        s["recipe"] = c.recipe.name;
        s["L"] = e.nonclifford_count;
        s["p"] = e.p;
        s["p_bar_c"] = e.p_bar_c;
        s["d"] = e.d;
        s["r_c_est"] = e.r_c_est;
        s["r_n_est"] = e.r_n_est;
        s["noise_class"] = noise_class_name(e.noise_class);
        s["error_bound"] = e.bound_E;
        s["ratio_above_one"] = e.ratio_above_one;
        s["fit_baseline"] = fit_json(e.baseline.fit);
        s["fit_interleaved"] = fit_json(e.interleaved.fit);
        s["degenerate"] = e.baseline.fit.degenerate || e.interleaved.fit.degenerate;
        s["warnings"] = json::array();
        s["reproducibility"] = reproducibility(config, c.base.seed, c.base.threads);
    } else if (subcommand == "plan") {
        const ResourcePlan p = parse_plan(config);
        const ResourceReport r = evaluate_plan(p);
        s["upsilon"] = r.upsilon;
        s["N_m"] = r.N_m;
        s["hoeffding_failure"] = r.hoeffding_failure;
        s["H"] = r.H;
        s["K_m_raw"] = r.K_m_raw;
        s["K_m"] = r.K_m;
        s["N_exp"] = r.N_exp;
        s["N_class_scaled"] = r.N_class_scaled;
        s["P_perf_lower"] = r.P_perf_lower;
        s["regime_ok"] = r.regime_ok;
        s["reproducibility"] = reproducibility(config, 0, 1);
    } else if (subcommand == "verify-synthesis") {
        const auto recipes = recipes_from(config);
        json rows = json::array();
        bool all = true;
        for (const auto &r : recipes) {
            const SynthesisCheck c = verify_synthesis(r);
            all = all && c.pass;
            rows.push_back({{"name", r.name},
                            {"L", r.nonclifford_count()},
                            {"pass", c.pass},
                            {"max_deviation", std::isfinite(c.max_deviation) ? json(c.max_deviation) : json("inf")}});
        }
        s["recipes"] = rows;
        s["all_pass"] = all;
        s["reproducibility"] = reproducibility(config, 0, 1);
        result.exit_code = all ? 0 : 1;
    } else {
        throw ConfigError("subcommand", "unknown subcommand '" + std::string(subcommand) + "'");
    }

    s["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file(dir / "summary.json", s.dump(2) + "\n", result);
    return result;
}

std::vector<std::string> summary_keys(std::string_view subcommand) {
    std::vector<std::string> common{"subcommand", "wall_time_s", "reproducibility"};
    std::vector<std::string> extra;
    if (subcommand == "rb") {
        extra = {"r_rb", "p_rb", "fit_rb", "degenerate", "warnings"};
    } else if (subcommand == "rbsv") {
        extra = {"r_rbsv", "A0", "B0", "p", "fit_residual", "fit_rbsv", "saturation", "degenerate", "warnings"};
    } else if (subcommand == "compare") {
        extra = {"r_rb", "p_rb", "fit_rb", "r_rbsv", "fit_rbsv", "saturation", "ratio", "degenerate", "warnings"};
    } else if (subcommand == "irbgs") {
        extra = {"recipe", "L", "p", "p_bar_c", "d", "r_c_est", "r_n_est", "noise_class", "error_bound",
                 "ratio_above_one", "fit_baseline", "fit_interleaved", "degenerate", "warnings"};
    } else if (subcommand == "plan") {
        extra = {"upsilon", "N_m", "hoeffding_failure", "H", "K_m_raw", "K_m", "N_exp", "N_class_scaled",
                 "P_perf_lower", "regime_ok"};
    } else if (subcommand == "verify-synthesis") {
        extra = {"recipes", "all_pass"};
    }
    common.insert(common.end(), extra.begin(), extra.end());
    return common;
}

}  // namespace rbsv
