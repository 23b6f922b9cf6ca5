// Copyright 2026 The qftdyn Authors
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


#ifndef QFTDYN_TOOLS_EXPERIMENT_CONFIG_HPP
#define QFTDYN_TOOLS_EXPERIMENT_CONFIG_HPP

#include <cstdint>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "qftdyn/dd.hpp"
#include "qftdyn/noise.hpp"
#include "qftdyn/qft.hpp"

namespace qftdyn::tools {

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string &field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(field) {
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

struct PeriodicOptions {
    std::uint32_t n = 10;
    std::uint64_t offset = 3;
    std::uint64_t period = 4;
};

struct ExperimentConfig {
    std::vector<QftVariant> variant{QftVariant::Unitary, QftVariant::Dynamic};
    std::vector<std::uint32_t> n_range{2, 3, 4, 5, 6};
    /// Sequence names; "auto" picks FC_DD for dynamic and UR10 for unitary circuits.
    std::vector<std::string> dd{"auto"};
    NoiseModel noise = NoiseModel::standard();
    TimingModel timing;
    std::uint32_t m = 20;
    std::uint64_t shots = 2000;
    std::uint64_t seed = 1;
    bool mitigate = true;
    std::uint32_t bootstrap_resamples = 1000;
    std::string output = "qftdyn-out";
    bool svg = false;
    PeriodicOptions periodic;

    /// Throws ConfigError on the first invalid field.
    void validate() const;
};

/// Overlays the fields present in `j` onto `base`. Unknown keys are errors.
ExperimentConfig config_from_json(const nlohmann::json &j, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string &path, ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig &config);

/// 16 hex digits of FNV-1a 64 over the key-sorted compact JSON form,
/// leaving out the output location and chart flag.
std::string config_hash(const ExperimentConfig &config);
std::uint64_t fnv1a64(std::string_view bytes);

/// "2..8", "4,6,8" or "5".
std::vector<std::uint32_t> parse_n_list(const std::string &text, const std::string &field = "n_range");
/// "unitary", "dynamic", "both" or a comma separated list.
std::vector<QftVariant> parse_variant_list(const std::string &text, const std::string &field = "variant");
std::vector<std::string> split_list(const std::string &text);

/// Resolves a configured sequence name for one variant.
DdSequence resolve_dd(const std::string &name, QftVariant variant);

}  // namespace qftdyn::tools

#endif
