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


#ifndef QFTDYN_TOOLS_COMMANDS_HPP
#define QFTDYN_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "experiment_config.hpp"

namespace qftdyn::tools {

/// Worker threads and progress sink; neither affects file contents.
struct RunContext {
    unsigned threads = 0;
    std::ostream *log = nullptr;
};

/// Each command returns the paths it wrote, in write order.
std::vector<std::string> cmd_fidelity_sweep(const ExperimentConfig &config, const RunContext &context);
std::vector<std::string> cmd_periodic_demo(const ExperimentConfig &config, const RunContext &context);
std::vector<std::string> cmd_plurality(const ExperimentConfig &config, const RunContext &context);
std::vector<std::string> cmd_dd_table(const ExperimentConfig &config, const RunContext &context);

struct RewriteSummary {
    bool rewritten = false;
    std::size_t removed_two_qubit_gates = 0;
    std::size_t added_mid_circuit_measurements = 0;
    std::size_t hoisted_measurements = 0;
    std::vector<std::size_t> unconverted_gate_indices;
    /// Set when verification was requested.
    double max_deviation = -1.0;
};

/// Reads a circuit file, rewrites it and writes the result to `output_path`.
RewriteSummary cmd_rewrite(const std::string &input_path, const std::string &output_path, bool verify);

}  // namespace qftdyn::tools

#endif
