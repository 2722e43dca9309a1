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

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "rbsv/experiment.h"

namespace {

void configure_logging() {
    const char *level = std::getenv("RBSV_LOG");
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

void print_plan(const nlohmann::json &s) {
    for (const char *key : {"upsilon", "N_m", "hoeffding_failure", "H", "K_m_raw", "K_m", "N_exp", "N_class_scaled",
                            "P_perf_lower", "regime_ok"}) {
        std::cout << std::string(18 - std::char_traits<char>::length(key), ' ') << key << "  " << s.at(key).dump()
                  << "\n";
    }
}

void print_synthesis(const nlohmann::json &s) {
    for (const auto &row : s.at("recipes")) {
        std::printf("%-4s %-14s L=%-3d deviation %s\n", row.at("pass").get<bool>() ? "PASS" : "FAIL",
                    row.at("name").get<std::string>().c_str(), row.at("L").get<int>(),
                    row.at("max_deviation").dump().c_str());
    }
}

}  // namespace

int main(int argc, char **argv) {
    configure_logging();
    CLI::App app{"Randomized benchmarking with stabilizer verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", rbsv::kVersion);

    std::string config_path;
    uint64_t seed = 0;
    size_t threads = 1;
    std::string out_dir;
    bool exact = false;

    for (const char *name : {"rb", "rbsv", "irbgs", "compare", "plan", "verify-synthesis"}) {
        const std::string n = name;
        auto *sub = app.add_subcommand(n, n == "verify-synthesis" ? "check the synthesis recipes"
                                          : n == "plan"           ? "evaluate resource formulas"
                                                                  : "run the " + n + " protocol");
        auto *cfg = sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
        if (n != "verify-synthesis") {
            cfg->required();
        }
        if (n != "plan" && n != "verify-synthesis") {
            sub->add_option("--seed", seed, "master seed; overrides the config");
            sub->add_option("--threads", threads, "worker threads; overrides the config")
                ->check(CLI::PositiveNumber);
            sub->add_flag("--exact", exact, "use exact per-sequence probabilities");
        }
        sub->add_option("--out", out_dir, "output directory");
    }
    CLI11_PARSE(app, argc, argv);

    CLI::App *sub = app.get_subcommands().front();
    rbsv::RunOverrides overrides;
    if (sub->get_option_no_throw("--seed") && sub->count("--seed")) {
        overrides.seed = seed;
    }
    if (sub->get_option_no_throw("--threads") && sub->count("--threads")) {
        overrides.threads = threads;
    }
    overrides.exact = exact;
    if (!out_dir.empty()) {
        overrides.out_dir = out_dir;
    }

    try {
        nlohmann::json config = config_path.empty() ? nlohmann::json() : rbsv::load_json_file(config_path);
        spdlog::info("running {} with config {}", sub->get_name(), config_path.empty() ? "(bundled)" : config_path);
        rbsv::RunResult result = rbsv::run_subcommand(sub->get_name(), config, overrides);
        for (const auto &f : result.files) {
            spdlog::info("wrote {}", f.string());
        }
        if (result.summary.contains("warnings")) {
            for (const auto &w : result.summary.at("warnings")) {
                spdlog::warn("{}", w.get<std::string>());
            }
        }
        if (sub->get_name() == "plan") {
            print_plan(result.summary);
        } else if (sub->get_name() == "verify-synthesis") {
            print_synthesis(result.summary);
        } else {
            std::cout << result.summary.dump(2) << "\n";
        }
        return result.exit_code;
    } catch (const rbsv::ConfigError &e) {
        spdlog::error("invalid config: {}", e.what());
        return 2;
    } catch (const rbsv::FailureSignature &e) {
        spdlog::error("failure signature: {}", e.what());
        return 3;
    } catch (const std::exception &e) {
        spdlog::error("{}", e.what());
        return 4;
    }
}
