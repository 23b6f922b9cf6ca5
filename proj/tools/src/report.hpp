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


#ifndef QFTDYN_TOOLS_REPORT_HPP
#define QFTDYN_TOOLS_REPORT_HPP

#include <string>
#include <vector>

#include "experiment_config.hpp"

namespace qftdyn::tools {

/// Shortest round-trippable-enough decimal form used in every output file.
std::string format_number(double value);

/// "# qftdyn <version>" and "# config_hash <hash>" lines.
std::string provenance_header(const ExperimentConfig &config);

/// Creates parent directories as needed; throws std::runtime_error on failure.
void write_file(const std::string &path, const std::string &content);

struct ChartSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    /// Optional band; empty or same length as y.
    std::vector<double> low;
    std::vector<double> high;
};

/// Line chart with shaded bands, as a standalone SVG document.
std::string svg_line_chart(const std::string &title, const std::string &x_label, const std::string &y_label,
                           const std::vector<ChartSeries> &series, double y_min = 0.0, double y_max = 1.0);

/// Step outlines of several histograms over the same integer bins.
std::string svg_histogram(const std::string &title, const std::string &x_label,
                          const std::vector<ChartSeries> &series);

}  // namespace qftdyn::tools

#endif
