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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "qftdyn/simulator.hpp"

namespace qftdyn {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Runs single shots against a shared, immutable circuit. Single-qubit work is
// accumulated per qubit and only applied to the state when a CPHASE or MEASURE
// needs it.
class ShotRunner {
   public:
    ShotRunner(const Circuit &circuit, const StateVector &input, const NoiseModel &noise, std::uint64_t seed)
        : circuit_(circuit),
          input_(input),
          noise_(noise),
          seed_(seed),
          state_(input),
          pending_(circuit.n_qubits()),
          dirty_(circuit.n_qubits(), false) {
        const double eps = noise.pulse_over_rotation;
        x_pulse_ = eps == 0.0 ? mat_x() : mat_rx(std::numbers::pi + eps);
        y_pulse_ = eps == 0.0 ? mat_y() : mat_ry(std::numbers::pi + eps);
    }

    ShotRecord run(std::uint64_t index) {
        std::mt19937_64 rng(shot_seed(seed_, index));
        const std::uint32_t n = circuit_.n_qubits();
        const std::uint32_t m = circuit_.n_clbits();

        ShotRecord record;
        record.detunings.assign(n, 0.0);
        if (noise_.idle_detuning_sigma > 0.0) {
            std::normal_distribution<double> normal(0.0, noise_.idle_detuning_sigma);
            for (auto &nu : record.detunings) {
                nu = normal(rng);
            }
        }
        std::copy(input_.amplitudes().begin(), input_.amplitudes().end(), state_.amplitudes().begin());
        std::fill(dirty_.begin(), dirty_.end(), false);

        auto push = [&](std::uint32_t q, const Mat2 &g) {
            pending_[q] = dirty_[q] ? mat_mul(g, pending_[q]) : g;
            dirty_[q] = true;
        };
        auto flush = [&](std::uint32_t q) {
            if (dirty_[q]) {
                state_.apply_1q(q, pending_[q]);
                dirty_[q] = false;
            }
        };
        auto depolarize_1q = [&](std::uint32_t q) {
            if (noise_.p1 > 0.0 && uniform(rng) < noise_.p1) {
                push(q, mat_pauli(static_cast<int>(rng() & 3)));
            }
        };
        auto mask = [&](std::uint32_t c) { return std::uint64_t{1} << (m - 1 - c); };
        auto condition = [&](const Instruction &inst) { return (record.bits & mask(inst.clbit->index)) != 0; };

        for (const auto &inst : circuit_.instructions()) {
            switch (inst.kind) {
                case GateKind::H:
                    push(inst.qubits[0].index, mat_h());
                    depolarize_1q(inst.qubits[0].index);
                    break;
                case GateKind::X:
                    push(inst.qubits[0].index, x_pulse_);
                    depolarize_1q(inst.qubits[0].index);
                    break;
                case GateKind::Y:
                    push(inst.qubits[0].index, y_pulse_);
                    depolarize_1q(inst.qubits[0].index);
                    break;
                case GateKind::Rz:
                    push(inst.qubits[0].index, mat_rz(inst.angle.radians()));
                    break;
                case GateKind::ClassicalRz:
                    if (condition(inst)) {
                        push(inst.qubits[0].index, mat_rz(inst.angle.radians()));
                    }
                    break;
                case GateKind::ClassicalX:
                    if (condition(inst)) {
                        push(inst.qubits[0].index, x_pulse_);
                        depolarize_1q(inst.qubits[0].index);
                    }
                    break;
                case GateKind::CPhase: {
                    std::uint32_t a = inst.qubits[0].index;
                    std::uint32_t b = inst.qubits[1].index;
                    flush(a);
                    flush(b);
                    state_.apply_cphase(a, b, inst.angle.radians());
                    if (noise_.p2 > 0.0 && uniform(rng) < noise_.p2) {
                        auto pauli = static_cast<int>(rng() & 15);
                        push(a, mat_pauli(pauli >> 2));
                        push(b, mat_pauli(pauli & 3));
                    }
                    break;
                }
                case GateKind::Delay: {
                    std::uint32_t q = inst.qubits[0].index;
                    double phase = record.detunings[q] * inst.duration_ns;
                    if (phase != 0.0) {
                        push(q, mat_rz(phase));
                    }
                    if (noise_.dephasing_rate > 0.0) {
                        double flip = (1.0 - std::exp(-noise_.dephasing_rate * inst.duration_ns)) / 2;
                        if (uniform(rng) < flip) {
                            push(q, mat_z());
                        }
                    }
                    break;
                }
                case GateKind::Measure: {
                    std::uint32_t q = inst.qubits[0].index;
                    flush(q);
                    double p1 = std::clamp(state_.probability_one(q), 0.0, 1.0);
                    int outcome = uniform(rng) < p1 ? 1 : 0;
                    state_.collapse(q, outcome, outcome ? p1 : 1.0 - p1);
                    int recorded = outcome;
                    if (noise_.eps_ro > 0.0 && uniform(rng) < noise_.eps_ro) {
                        recorded ^= 1;
                    }
                    std::uint64_t bit = mask(inst.clbit->index);
                    record.bits = recorded ? (record.bits | bit) : (record.bits & ~bit);
                    break;
                }
                case GateKind::Barrier:
                    break;
            }
        }
        return record;
    }

   private:
    const Circuit &circuit_;
    const StateVector &input_;
    const NoiseModel &noise_;
    std::uint64_t seed_;
    StateVector state_;
    std::vector<Mat2> pending_;
    std::vector<bool> dirty_;
    Mat2 x_pulse_;
    Mat2 y_pulse_;
    std::uniform_real_distribution<double> uniform{0.0, 1.0};
};

}  // namespace

std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index));
}

std::vector<ShotRecord> run_trajectories(const Circuit &circuit, const StateVector &input, const NoiseModel &noise,
                                         const TimingModel &timing, std::uint64_t shots, std::uint64_t seed,
                                         unsigned threads) {
    require_valid(circuit);
    noise.validate();
    timing.validate();
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    if (input.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("input state has " + std::to_string(input.n_qubits()) +
                                    " qubits but the circuit has " + std::to_string(circuit.n_qubits()));
    }
    Circuit timed = noise.apply_idle_during_feedforward ? realize_feedforward_latency(circuit, timing) : circuit;

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, (shots + 255) / 256));

    std::vector<ShotRecord> records(shots);
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        ShotRunner runner(timed, input, noise, seed);
        for (std::uint64_t i = begin; i < end; ++i) {
            records[i] = runner.run(i);
        }
    };
    if (threads <= 1) {
        work(0, shots);
        return records;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (shots + threads - 1) / threads;
    for (std::uint64_t begin = 0; begin < shots; begin += chunk) {
        pool.emplace_back(work, begin, std::min(shots, begin + chunk));
    }
    for (auto &t : pool) {
        t.join();
    }
    return records;
}

std::vector<ShotRecord> run_trajectories(const Circuit &circuit, std::uint64_t basis_label, const NoiseModel &noise,
                                         const TimingModel &timing, std::uint64_t shots, std::uint64_t seed,
                                         unsigned threads) {
    return run_trajectories(circuit, StateVector::basis(circuit.n_qubits(), basis_label), noise, timing, shots, seed,
                            threads);
}

std::vector<ShotRecord> run_trajectories(const Circuit &circuit, const Circuit &prep, const NoiseModel &noise,
                                         const TimingModel &timing, std::uint64_t shots, std::uint64_t seed,
                                         unsigned threads) {
    if (prep.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("preparation circuit width differs from the circuit");
    }
    return run_trajectories(circuit, StateVector::prepared(prep), noise, timing, shots, seed, threads);
}

}  // namespace qftdyn
