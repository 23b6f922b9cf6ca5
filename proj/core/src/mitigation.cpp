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

#include "qftdyn/mitigation.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace qftdyn {

namespace {

using Inverse = std::array<double, 4>;

std::vector<Inverse> inverses(const ConfusionModel &model) {
    std::vector<Inverse> out;
    for (std::uint32_t c = 0; c < model.n_bits(); ++c) {
        const auto &m = model.matrices[c];
        double det = m[0] * m[3] - m[1] * m[2];
        if (std::abs(det) < 1e-6) {
            throw std::invalid_argument("confusion matrix of bit " + std::to_string(c) + " is singular");
        }
        out.push_back({m[3] / det, -m[1] / det, -m[2] / det, m[0] / det});
    }
    return out;
}

void check_width(const OutcomeDistribution &d, const ConfusionModel &model) {
    model.validate();
    if (d.n_bits != model.n_bits()) {
        throw std::invalid_argument("confusion model covers " + std::to_string(model.n_bits()) +
                                    " bits but the distribution has " + std::to_string(d.n_bits));
    }
}

int bit_of(std::uint64_t outcome, std::uint32_t n_bits, std::uint32_t c) {
    return static_cast<int>((outcome >> (n_bits - 1 - c)) & 1);
}

// sum_y prod_c inv_c[x_c][y_c] value(y)
double apply_inverse(const OutcomeDistribution &d, const std::vector<Inverse> &inv, std::uint64_t x) {
    double total = 0.0;
    for (const auto &[y, value] : d.values) {
        double w = value;
        for (std::uint32_t c = 0; c < d.n_bits && w != 0.0; ++c) {
            w *= inv[c][bit_of(x, d.n_bits, c) * 2 + bit_of(y, d.n_bits, c)];
        }
        total += w;
    }
    return total;
}

}  // namespace

ConfusionModel ConfusionModel::identity(std::uint32_t n_bits) {
    return symmetric(n_bits, 0.0);
}

ConfusionModel ConfusionModel::symmetric(std::uint32_t n_bits, double flip) {
    ConfusionModel m;
    m.matrices.assign(n_bits, {1.0 - flip, flip, flip, 1.0 - flip});
    m.validate();
    return m;
}

void ConfusionModel::validate() const {
    for (std::size_t c = 0; c < matrices.size(); ++c) {
        const auto &m = matrices[c];
        for (double v : m) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument("confusion entries must lie in [0, 1] (bit " + std::to_string(c) + ")");
            }
        }
        if (std::abs(m[0] + m[2] - 1.0) > 1e-12 || std::abs(m[1] + m[3] - 1.0) > 1e-12) {
            throw std::invalid_argument("confusion columns must sum to 1 (bit " + std::to_string(c) + ")");
        }
    }
}

OutcomeDistribution apply_confusion(const OutcomeDistribution &distribution, const ConfusionModel &model) {
    check_width(distribution, model);
    const std::uint32_t n = distribution.n_bits;
    OutcomeDistribution out = distribution;
    // One bit at a time keeps the cost linear in the number of bits.
    for (std::uint32_t c = 0; c < n; ++c) {
        const auto &m = model.matrices[c];
        const std::uint64_t mask = std::uint64_t{1} << (n - 1 - c);
        std::map<std::uint64_t, double> next;
        for (const auto &[x, value] : out.values) {
            int actual = (x & mask) ? 1 : 0;
            for (int recorded = 0; recorded < 2; ++recorded) {
                double w = m[recorded * 2 + actual];
                if (w != 0.0) {
                    next[recorded ? (x | mask) : (x & ~mask)] += w * value;
                }
            }
        }
        out.values = std::move(next);
    }
    return out;
}

OutcomeDistribution mitigate_readout(const OutcomeDistribution &distribution, const ConfusionModel &model) {
    check_width(distribution, model);
    const auto inv = inverses(model);
    const std::uint32_t n = distribution.n_bits;
    std::set<std::uint64_t> support;
    for (const auto &[x, value] : distribution.values) {
        support.insert(x);
        for (std::uint32_t c = 0; c < n; ++c) {
            support.insert(x ^ (std::uint64_t{1} << c));
        }
    }
    OutcomeDistribution out;
    out.n_bits = n;
    out.shots = distribution.shots;
    double kept = 0.0;
    for (std::uint64_t x : support) {
        double v = apply_inverse(distribution, inv, x);
        if (v > 0.0) {
            out.values[x] = v;
            kept += v;
        }
    }
    const double target = distribution.total();
    if (kept > 0.0) {
        for (auto &[x, v] : out.values) {
            v *= target / kept;
        }
    }
    return out;
}

double mitigated_probability(const OutcomeDistribution &distribution, const ConfusionModel &model,
                             std::uint64_t outcome) {
    check_width(distribution, model);
    double total = distribution.total();
    if (total <= 0.0) {
        throw std::invalid_argument("cannot mitigate an empty distribution");
    }
    return apply_inverse(distribution, inverses(model), outcome) / total;
}

}  // namespace qftdyn
