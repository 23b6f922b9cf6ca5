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

#ifndef QFTDYN_MITIGATION_HPP
#define QFTDYN_MITIGATION_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qftdyn/simulator.hpp"

namespace qftdyn {

/// Product readout-error model. matrices[c][recorded * 2 + actual] is the
/// probability of recording `recorded` for clbit c when the true bit is `actual`.
struct ConfusionModel {
    std::vector<std::array<double, 4>> matrices;

    static ConfusionModel identity(std::uint32_t n_bits);
    /// Every bit flips with probability `flip`.
    static ConfusionModel symmetric(std::uint32_t n_bits, double flip);

    std::uint32_t n_bits() const {
        return static_cast<std::uint32_t>(matrices.size());
    }
    /// Throws std::invalid_argument unless every column is a probability vector.
    void validate() const;
};

/// Pushes a distribution through the confusion model.
OutcomeDistribution apply_confusion(const OutcomeDistribution &distribution, const ConfusionModel &model);

/// Tensored-inverse mitigation on the observed outcomes and their Hamming-1
/// neighbours; negative results are clipped to 0 and the total restored.
OutcomeDistribution mitigate_readout(const OutcomeDistribution &distribution, const ConfusionModel &model);

/// Unclipped tensored-inverse estimate of the probability of one outcome.
double mitigated_probability(const OutcomeDistribution &distribution, const ConfusionModel &model,
                             std::uint64_t outcome);

}  // namespace qftdyn

#endif
