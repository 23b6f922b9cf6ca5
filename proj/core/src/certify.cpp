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

#include "qftdyn/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "qftdyn/density_matrix.hpp"

namespace qftdyn {

namespace {

constexpr std::uint64_t kGroupStream = 0x243F6A8885A308D3ull;
constexpr std::uint64_t kBootstrapStream = 0x13198A2E03707344ull;

void require_label_channel(const Channel &channel) {
    if (channel.circuit.n_clbits() != channel.circuit.n_qubits()) {
        throw std::invalid_argument("fidelity certification needs one classical bit per qubit");
    }
}

double clamp01(double v) {
    return std::clamp(v, 0.0, 1.0);
}

double percentile(const std::vector<double> &sorted, double q) {
    if (sorted.size() == 1) {
        return sorted.front();
    }
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

// Observed outcome counts of one group in a fixed order.
struct Histogram {
    std::uint64_t expected = 0;
    std::uint64_t shots = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
};

double estimate_probability(const Histogram &h, std::uint32_t n_bits, const ConfusionModel *confusion) {
    if (confusion == nullptr) {
        for (const auto &[outcome, count] : h.counts) {
            if (outcome == h.expected) {
                return static_cast<double>(count) / static_cast<double>(h.shots);
            }
        }
        return 0.0;
    }
    OutcomeDistribution d;
    d.n_bits = n_bits;
    d.shots = h.shots;
    for (const auto &[outcome, count] : h.counts) {
        if (count > 0) {
            d.values[outcome] = static_cast<double>(count);
        }
    }
    return clamp01(mitigated_probability(d, *confusion, h.expected));
}

Histogram resample(const Histogram &h, std::mt19937_64 &rng) {
    Histogram out;
    out.expected = h.expected;
    out.shots = h.shots;
    std::uint64_t remaining = h.shots;
    double remaining_mass = 1.0;
    for (std::size_t j = 0; j < h.counts.size(); ++j) {
        double p = static_cast<double>(h.counts[j].second) / static_cast<double>(h.shots);
        std::uint64_t c = remaining;
        if (j + 1 < h.counts.size() && remaining > 0) {
            double conditional = remaining_mass > 0.0 ? std::clamp(p / remaining_mass, 0.0, 1.0) : 0.0;
            std::binomial_distribution<std::uint64_t> draw(remaining, conditional);
            c = draw(rng);
        }
        out.counts.push_back({h.counts[j].first, c});
        remaining -= c;
        remaining_mass -= p;
    }
    return out;
}

}  // namespace

Channel make_qft_channel(QftVariant variant, std::uint32_t n, const DdSequence &dd, const NoiseModel &noise,
                         const TimingModel &timing) {
    return Channel{insert_dd(build_qft(variant, n), timing, dd), noise, timing};
}

Channel ideal_version(const Channel &channel) {
    return Channel{channel.circuit, NoiseModel::noiseless(), channel.timing};
}

std::vector<double> exact_success_probabilities(const Channel &channel) {
    require_label_channel(channel);
    const std::uint32_t n = channel.circuit.n_qubits();
    if (n > 6) {
        throw std::invalid_argument("exact process fidelity is limited to 6 qubits");
    }
    std::vector<double> out;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
        StateVector input = StateVector::prepared(build_qft_dagger_state_prep(BasisLabel(k, n)));
        auto d = run_density_matrix(channel.circuit, input, channel.noise, channel.timing);
        out.push_back(d.probability(k));
    }
    return out;
}

double exact_process_fidelity(const Channel &channel) {
    auto probs = exact_success_probabilities(channel);
    double sum = 0.0;
    for (double p : probs) {
        sum += std::sqrt(std::max(0.0, p));
    }
    double mean = sum / static_cast<double>(probs.size());
    return mean * mean;
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd &m) {
    Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    Eigen::VectorXd values = solver.eigenvalues();
    if (values.size() > 0 && values.minCoeff() < -1e-8) {
        throw std::runtime_error("matrix is not positive semidefinite (eigenvalue " +
                                 std::to_string(values.minCoeff()) + ")");
    }
    // Eigenvalues at rounding level are zero; their square roots would not be.
    const double scale = values.size() > 0 ? values.cwiseAbs().maxCoeff() : 0.0;
    const double floor = 16.0 * static_cast<double>(values.size()) * std::numeric_limits<double>::epsilon() * scale;
    Eigen::VectorXd roots = values.unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

double uhlmann_fidelity(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw std::invalid_argument("Uhlmann fidelity needs square matrices of equal size");
    }
    // Tr sqrt(sqrt(a) b sqrt(a)) is the trace norm of sqrt(a) sqrt(b).
    Eigen::MatrixXcd product = psd_sqrt(a) * psd_sqrt(b);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(product);
    double trace = svd.singularValues().sum();
    return trace * trace;
}

double choi_uhlmann_fidelity(const Channel &ideal, const Channel &noisy) {
    if (ideal.circuit.n_qubits() > 4 || noisy.circuit.n_qubits() > 4) {
        throw std::invalid_argument("Choi-state fidelity is limited to 4 qubits");
    }
    if (ideal.circuit.n_qubits() != noisy.circuit.n_qubits() ||
        ideal.circuit.n_clbits() != noisy.circuit.n_clbits()) {
        throw std::invalid_argument("channels differ in width");
    }
    auto a = choi_matrix(ideal.circuit, ideal.noise, ideal.timing);
    auto b = choi_matrix(noisy.circuit, noisy.noise, noisy.timing);
    return uhlmann_fidelity(a, b);
}

double naive_fidelity(std::span<const double> probabilities) {
    if (probabilities.empty()) {
        throw std::invalid_argument("no probabilities given");
    }
    double sum = 0.0;
    for (double p : probabilities) {
        sum += std::sqrt(clamp01(p));
    }
    double mean = sum / static_cast<double>(probabilities.size());
    return mean * mean;
}

double bias_corrected_fidelity(std::span<const double> probabilities) {
    const auto m = static_cast<double>(probabilities.size());
    if (probabilities.size() < 2) {
        throw std::invalid_argument("bias correction needs at least two sampled inputs");
    }
    double roots = 0.0;
    double total = 0.0;
    for (double p : probabilities) {
        double c = clamp01(p);
        roots += std::sqrt(c);
        total += c;
    }
    // (S^2 - T) / (m (m - 1)): the pairwise mean of sqrt(p_i p_j) over i != j.
    return (roots * roots - total) / (m * (m - 1));
}

std::vector<std::uint64_t> sample_inputs(std::uint32_t n, std::uint32_t m, std::uint64_t seed, bool with_replacement) {
    if (n < 1 || n > 62) {
        throw std::invalid_argument("input labels need 1..62 bits");
    }
    if (m < 1) {
        throw std::invalid_argument("m must be at least 1");
    }
    const std::uint64_t space = std::uint64_t{1} << n;
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out;
    if (with_replacement) {
        std::uniform_int_distribution<std::uint64_t> pick(0, space - 1);
        for (std::uint32_t i = 0; i < m; ++i) {
            out.push_back(pick(rng));
        }
        return out;
    }
    if (m > space) {
        throw std::invalid_argument("cannot draw " + std::to_string(m) + " distinct labels from 2^" +
                                    std::to_string(n));
    }
    // Floyd's algorithm.
    std::set<std::uint64_t> chosen;
    for (std::uint64_t j = space - m; j < space; ++j) {
        std::uniform_int_distribution<std::uint64_t> pick(0, j);
        std::uint64_t t = pick(rng);
        chosen.insert(chosen.contains(t) ? j : t);
    }
    return {chosen.begin(), chosen.end()};
}

std::vector<ShotGroup> run_channel_groups(const Channel &channel, std::span<const std::uint64_t> inputs,
                                          std::uint64_t shots, std::uint64_t seed, unsigned threads) {
    require_label_channel(channel);
    const std::uint32_t n = channel.circuit.n_qubits();
    std::vector<ShotGroup> groups;
    for (std::size_t l = 0; l < inputs.size(); ++l) {
        Circuit prep = build_qft_dagger_state_prep(BasisLabel(inputs[l], n));
        ShotGroup g;
        g.expected = inputs[l];
        g.records = run_trajectories(channel.circuit, prep, channel.noise, channel.timing, shots,
                                     shot_seed(seed ^ kGroupStream, l), threads);
        groups.push_back(std::move(g));
    }
    return groups;
}

FidelityEstimate estimate_from_groups(std::span<const ShotGroup> groups, std::uint32_t n_bits,
                                      const ConfusionModel *confusion, std::uint32_t bootstrap_resamples,
                                      std::uint64_t seed) {
    if (groups.size() < 2) {
        throw std::invalid_argument("fidelity estimation needs at least two sampled inputs");
    }
    std::vector<Histogram> hists;
    for (const auto &g : groups) {
        if (g.records.empty()) {
            throw std::invalid_argument("every sampled input needs at least one shot");
        }
        std::map<std::uint64_t, std::uint64_t> counts;
        for (const auto &r : g.records) {
            counts[r.bits] += 1;
        }
        hists.push_back({g.expected, g.records.size(), {counts.begin(), counts.end()}});
    }

    FidelityEstimate est;
    est.m = static_cast<std::uint32_t>(groups.size());
    est.shots_per_bitstring = hists.front().shots;
    for (const auto &h : hists) {
        est.inputs.push_back(h.expected);
        est.probabilities.push_back(estimate_probability(h, n_bits, confusion));
    }
    est.point_raw = naive_fidelity(est.probabilities);
    est.bias_corrected_raw = bias_corrected_fidelity(est.probabilities);
    est.point = clamp01(est.point_raw);
    est.bias_corrected = clamp01(est.bias_corrected_raw);

    est.ci_low = est.ci_high = est.bias_corrected;
    if (bootstrap_resamples == 0) {
        return est;
    }
    std::mt19937_64 rng(seed ^ kBootstrapStream);
    std::uniform_int_distribution<std::size_t> pick(0, hists.size() - 1);
    std::vector<double> values;
    values.reserve(bootstrap_resamples);
    std::vector<double> probs(hists.size());
    for (std::uint32_t b = 0; b < bootstrap_resamples; ++b) {
        for (auto &p : probs) {
            p = estimate_probability(resample(hists[pick(rng)], rng), n_bits, confusion);
        }
        values.push_back(bias_corrected_fidelity(probs));
    }
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    est.std_error = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
    std::sort(values.begin(), values.end());
    est.ci_low = std::min(clamp01(percentile(values, 0.025)), est.bias_corrected);
    est.ci_high = std::max(clamp01(percentile(values, 0.975)), est.bias_corrected);
    return est;
}

FidelityEstimate sampled_process_fidelity(const Channel &channel, const SamplingOptions &options) {
    require_label_channel(channel);
    if (options.m < 2) {
        throw std::invalid_argument("m must be at least 2");
    }
    if (options.shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    const std::uint32_t n = channel.circuit.n_qubits();
    auto inputs = sample_inputs(n, options.m, options.seed, options.with_replacement);
    auto groups = run_channel_groups(channel, inputs, options.shots, options.seed, options.threads);
    std::optional<ConfusionModel> confusion;
    if (options.mitigate) {
        confusion = ConfusionModel::symmetric(n, channel.noise.eps_ro);
    }
    return estimate_from_groups(groups, n, confusion ? &*confusion : nullptr, options.bootstrap_resamples,
                                options.seed);
}

double plurality_vote_success(std::span<const ShotGroup> groups) {
    if (groups.empty()) {
        throw std::invalid_argument("plurality vote needs at least one group");
    }
    std::size_t wins = 0;
    for (const auto &g : groups) {
        if (g.records.empty()) {
            throw std::invalid_argument("plurality vote needs at least one shot per group");
        }
        std::map<std::uint64_t, std::size_t> counts;
        for (const auto &r : g.records) {
            counts[r.bits] += 1;
        }
        std::size_t best = 0;
        std::size_t holders = 0;
        std::uint64_t winner = 0;
        for (const auto &[outcome, count] : counts) {
            if (count > best) {
                best = count;
                holders = 1;
                winner = outcome;
            } else if (count == best) {
                holders += 1;
            }
        }
        if (holders == 1 && winner == g.expected) {
            wins += 1;
        }
    }
    return static_cast<double>(wins) / static_cast<double>(groups.size());
}

std::vector<DdEffectivenessRow> dd_effectiveness(const Circuit &circuit, const TimingModel &timing,
                                                 const NoiseModel &noise, std::span<const DdSequence> sequences,
                                                 const SamplingOptions &options) {
    std::vector<DdEffectivenessRow> rows;
    for (const auto &seq : sequences) {
        Channel channel{insert_dd(circuit, timing, seq), noise, timing};
        rows.push_back({seq, sampled_process_fidelity(channel, options)});
    }
    return rows;
}

}  // namespace qftdyn
