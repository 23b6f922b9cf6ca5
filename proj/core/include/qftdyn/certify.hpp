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

#ifndef QFTDYN_CERTIFY_HPP
#define QFTDYN_CERTIFY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "qftdyn/circuit.hpp"
#include "qftdyn/dd.hpp"
#include "qftdyn/mitigation.hpp"
#include "qftdyn/noise.hpp"
#include "qftdyn/qft.hpp"
#include "qftdyn/simulator.hpp"

namespace qftdyn {

/// A measurement-terminated circuit together with the noise it runs under.
/// The record of an n-qubit channel is read as an n-bit output label.
struct Channel {
    Circuit circuit;
    NoiseModel noise;
    TimingModel timing;
};

/// QFT of the given variant, scheduled with `dd` (NONE still makes idle time explicit).
Channel make_qft_channel(QftVariant variant, std::uint32_t n, const DdSequence &dd, const NoiseModel &noise,
                         const TimingModel &timing);

/// Same circuit with every noise source switched off.
Channel ideal_version(const Channel &channel);

/// [ (1/d) sum_k sqrt(Pr(k | prep_k)) ]^2 with prep_k the inverse-QFT image of |k>,
/// evaluated with the density-matrix engine. At most 6 qubits.
double exact_process_fidelity(const Channel &channel);

/// Per-input success probabilities Pr(k | prep_k) for every k.
std::vector<double> exact_success_probabilities(const Channel &channel);

/// [Tr sqrt(sqrt(a) b sqrt(a))]^2 for positive semidefinite a, b.
double uhlmann_fidelity(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

/// Hermitian square root via eigendecomposition; throws if `m` has an
/// eigenvalue below -1e-8.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd &m);

/// Uhlmann fidelity of the two channels' Choi states. At most 4 qubits.
double choi_uhlmann_fidelity(const Channel &ideal, const Channel &noisy);

struct FidelityEstimate {
    /// Squared mean of square roots, clamped to [0, 1].
    double point = 0.0;
    /// Bias-corrected estimate, clamped to [0, 1].
    double bias_corrected = 0.0;
    double point_raw = 0.0;
    double bias_corrected_raw = 0.0;
    /// 95% percentile bootstrap interval of the bias-corrected estimate.
    double ci_low = 0.0;
    double ci_high = 0.0;
    /// Bootstrap standard deviation of the bias-corrected estimate.
    double std_error = 0.0;
    std::uint32_t m = 0;
    std::uint64_t shots_per_bitstring = 0;
    std::vector<std::uint64_t> inputs;
    std::vector<double> probabilities;
};

struct SamplingOptions {
    std::uint32_t m = 20;
    std::uint64_t shots = 2000;
    std::uint64_t seed = 1;
    /// Apply tensored-inverse readout mitigation with the channel's eps_ro.
    bool mitigate = false;
    /// Required when m exceeds 2^n.
    bool with_replacement = false;
    std::uint32_t bootstrap_resamples = 1000;
    unsigned threads = 0;
};

/// (1/m sum sqrt(p))^2 without correction.
double naive_fidelity(std::span<const double> probabilities);
/// m/(m-1) (1/m sum sqrt(p))^2 - sum p / (m (m-1)).
double bias_corrected_fidelity(std::span<const double> probabilities);

/// m distinct labels from [0, 2^n) in increasing order (or m draws with replacement).
std::vector<std::uint64_t> sample_inputs(std::uint32_t n, std::uint32_t m, std::uint64_t seed,
                                         bool with_replacement = false);

/// Shots of one channel for one prepared input.
struct ShotGroup {
    std::uint64_t expected = 0;
    std::vector<ShotRecord> records;
};

/// Runs `shots` trajectories of prep_k followed by the channel for each k.
std::vector<ShotGroup> run_channel_groups(const Channel &channel, std::span<const std::uint64_t> inputs,
                                          std::uint64_t shots, std::uint64_t seed, unsigned threads = 0);

/// Sampled estimate of the process fidelity with a two-level bootstrap
/// (bitstrings, then shots within each bitstring).
FidelityEstimate sampled_process_fidelity(const Channel &channel, const SamplingOptions &options);

/// Estimate from already collected shots; `confusion` enables mitigation.
FidelityEstimate estimate_from_groups(std::span<const ShotGroup> groups, std::uint32_t n_bits,
                                      const ConfusionModel *confusion, std::uint32_t bootstrap_resamples,
                                      std::uint64_t seed);

/// Fraction of groups whose strictly most frequent record equals the expected label.
double plurality_vote_success(std::span<const ShotGroup> groups);

struct DdEffectivenessRow {
    DdSequence sequence;
    FidelityEstimate estimate;
};

/// Schedules `circuit` with each sequence and estimates its process fidelity.
std::vector<DdEffectivenessRow> dd_effectiveness(const Circuit &circuit, const TimingModel &timing,
                                                 const NoiseModel &noise, std::span<const DdSequence> sequences,
                                                 const SamplingOptions &options);

}  // namespace qftdyn

#endif
