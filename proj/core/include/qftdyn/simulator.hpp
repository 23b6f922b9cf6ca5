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

#ifndef QFTDYN_SIMULATOR_HPP
#define QFTDYN_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qftdyn/circuit.hpp"
#include "qftdyn/noise.hpp"
#include "qftdyn/statevector.hpp"

namespace qftdyn {

/// One shot: the recorded classical bits and the detunings drawn for it.
struct ShotRecord {
    /// Clbit c sits at bit (n_clbits - 1 - c).
    std::uint64_t bits = 0;
    /// Quasi-static detuning per qubit in rad/ns.
    std::vector<double> detunings;

    bool operator==(const ShotRecord &) const = default;
};

/// Probabilities (exact engines, shots == 0) or counts (sampled, shots > 0) per outcome.
struct OutcomeDistribution {
    std::uint32_t n_bits = 0;
    std::uint64_t shots = 0;
    std::map<std::uint64_t, double> values;

    bool is_exact() const {
        return shots == 0;
    }
    /// Normalized probability of `outcome`.
    double probability(std::uint64_t outcome) const;
    /// Sum of stored values (1 for exact, shots for sampled).
    double total() const;

    static OutcomeDistribution from_records(std::span<const ShotRecord> records, std::uint32_t n_bits);

    bool operator==(const OutcomeDistribution &) const = default;
};

/// `n_bits` characters, clbit 0 first.
std::string bitstring(std::uint64_t bits, std::uint32_t n_bits);

/// Half the L1 distance between the normalized distributions.
double total_variation_distance(const OutcomeDistribution &a, const OutcomeDistribution &b);

struct ExactLimits {
    std::uint32_t max_qubits = 14;
    std::uint64_t max_branches = std::uint64_t{1} << 14;
};

/// Noiseless outcome distribution by depth-first enumeration of measurement branches.
OutcomeDistribution run_exact(const Circuit &circuit, const StateVector &input, const ExactLimits &limits = {});
OutcomeDistribution run_exact(const Circuit &circuit, std::uint64_t basis_label, const ExactLimits &limits = {});

/// True when the circuit carries an explicit timeline (output of the DD scheduler).
bool is_scheduled(const Circuit &circuit);

/// Inserts DELAY(t_ff) on every not-yet-measured qubit just before the first
/// instruction that reads a freshly measured bit. Scheduled circuits and
/// t_ff = 0 are returned unchanged.
Circuit realize_feedforward_latency(const Circuit &circuit, const TimingModel &timing);

/// Monte Carlo trajectories. Shot i uses its own generator derived from
/// (seed, i), so results do not depend on `threads` (0 = hardware concurrency).
std::vector<ShotRecord> run_trajectories(const Circuit &circuit, const StateVector &input, const NoiseModel &noise,
                                         const TimingModel &timing, std::uint64_t shots, std::uint64_t seed,
                                         unsigned threads = 0);
std::vector<ShotRecord> run_trajectories(const Circuit &circuit, std::uint64_t basis_label, const NoiseModel &noise,
                                         const TimingModel &timing, std::uint64_t shots, std::uint64_t seed,
                                         unsigned threads = 0);
/// `prep` is applied noiselessly to |0...0> to form the input.
std::vector<ShotRecord> run_trajectories(const Circuit &circuit, const Circuit &prep, const NoiseModel &noise,
                                         const TimingModel &timing, std::uint64_t shots, std::uint64_t seed,
                                         unsigned threads = 0);

/// Seed of shot `index`'s generator.
std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace qftdyn

#endif
