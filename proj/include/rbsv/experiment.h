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

#ifndef RBSV_EXPERIMENT_H
#define RBSV_EXPERIMENT_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbsv/irb_gs.h"
#include "rbsv/rb.h"
#include "rbsv/rbsv.h"
#include "rbsv/resources.h"

namespace rbsv {

inline constexpr const char *kVersion = "0.1.0";
/// Bumped whenever a CSV column or summary key changes.
inline constexpr int kOutputSchemaVersion = 1;

/// A config problem tied to one field, e.g. "noise.epsilon: must lie in [0, 1]".
class ConfigError : public std::invalid_argument {
   public:
    ConfigError(const std::string &field, const std::string &message)
        : std::invalid_argument(field + ": " + message), field_(field) {
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

/// Command-line overrides applied on top of the config file.
struct RunOverrides {
    std::optional<uint64_t> seed;
    std::optional<size_t> threads;
    bool exact = false;
    std::optional<std::filesystem::path> out_dir;
};

struct RunResult {
    int exit_code = 0;
    nlohmann::json summary;
    std::vector<std::filesystem::path> files;
};

nlohmann::json load_json_file(const std::filesystem::path &path);

/// Channel objects: {"kind": "ideal"}, {"kind": "depolarizing", "epsilon"},
/// {"kind": "pauli", "table": {"XI": 0.01, ...}} (missing identity mass is
/// added to "I...I"), {"kind": "delta", "delta", "p_prime", "perturbation"?:
/// {"axis", "angle"}}.
NoiseChannel parse_channel(const nlohmann::json &j, size_t num_qubits, const std::string &field);

/// Protocol configs from the documented schema, with overrides applied.
RBConfig parse_rb_config(const nlohmann::json &config, const RunOverrides &overrides = {});
RBSVConfig parse_rbsv_config(const nlohmann::json &config, const RunOverrides &overrides = {});
IrbgsConfig parse_irbgs_config(const nlohmann::json &config, const RunOverrides &overrides = {});
ResourcePlan parse_plan(const nlohmann::json &config);

/// 64-bit FNV-1a of the compact dump of `config`.
uint64_t config_hash(const nlohmann::json &config);

/// Runs one of rb, rbsv, irbgs, compare, plan, verify-synthesis. Writes CSVs
/// and summary.json into the output directory. Config errors throw
/// ConfigError; an all-reject run throws FailureSignature.
RunResult run_subcommand(std::string_view subcommand, const nlohmann::json &config,
                         const RunOverrides &overrides = {});

/// Summary keys emitted for each subcommand, for schema checks.
std::vector<std::string> summary_keys(std::string_view subcommand);

}  // namespace rbsv

#endif
