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
#include <stdexcept>

#include "qftdyn/simulator.hpp"

namespace qftdyn {

namespace {

// Branches whose probability falls below this are dropped.
constexpr double kNegligible = 1e-26;

std::uint64_t clbit_mask(std::uint32_t n_clbits, std::uint32_t c) {
    return std::uint64_t{1} << (n_clbits - 1 - c);
}

class BranchEnumerator {
   public:
    BranchEnumerator(const Circuit &circuit, const ExactLimits &limits)
        : circuit_(circuit), limits_(limits), tail_start_(circuit.size()) {
        while (tail_start_ > 0) {
            GateKind k = circuit[tail_start_ - 1].kind;
            if (k != GateKind::Measure && k != GateKind::Barrier && k != GateKind::Delay) {
                break;
            }
            --tail_start_;
        }
        for (std::size_t i = tail_start_; i < circuit.size(); ++i) {
            if (circuit[i].kind == GateKind::Measure) {
                tail_measures_.push_back(i);
            }
        }
        result_.n_bits = circuit.n_clbits();
    }

    OutcomeDistribution run(StateVector state) {
        explore(0, std::move(state), 0);
        return std::move(result_);
    }

   private:
    bool read(std::uint64_t record, const Instruction &inst) const {
        return (record & clbit_mask(circuit_.n_clbits(), inst.clbit->index)) != 0;
    }

    std::uint64_t write(std::uint64_t record, std::uint32_t c, int bit) const {
        std::uint64_t mask = clbit_mask(circuit_.n_clbits(), c);
        return bit ? (record | mask) : (record & ~mask);
    }

    void explore(std::size_t pc, StateVector state, std::uint64_t record) {
        for (; pc < tail_start_; ++pc) {
            const Instruction &inst = circuit_[pc];
            switch (inst.kind) {
                case GateKind::ClassicalRz:
                    if (read(record, inst)) {
                        state.apply_unitary(Instruction::rz(inst.qubits[0].index, inst.angle));
                    }
                    break;
                case GateKind::ClassicalX:
                    if (read(record, inst)) {
                        state.apply_1q(inst.qubits[0].index, mat_x());
                    }
                    break;
                case GateKind::Measure: {
                    std::uint32_t q = inst.qubits[0].index;
                    double p1 = state.probability_one(q);
                    double p0 = std::max(0.0, state.norm_squared() - p1);
                    std::uint32_t c = inst.clbit->index;
                    if (p1 < kNegligible) {
                        state.project(q, 0);
                        record = write(record, c, 0);
                        break;
                    }
                    if (p0 < kNegligible) {
                        state.project(q, 1);
                        record = write(record, c, 1);
                        break;
                    }
                    StateVector other = state;
                    other.project(q, 1);
                    state.project(q, 0);
                    explore(pc + 1, std::move(other), write(record, c, 1));
                    record = write(record, c, 0);
                    break;
                }
                default:
                    state.apply_unitary(inst);
                    break;
            }
        }
        finish(state, record);
    }

    void finish(const StateVector &state, std::uint64_t record) {
        if (++leaves_ > limits_.max_branches) {
            throw std::runtime_error("exact simulation exceeds " + std::to_string(limits_.max_branches) +
                                     " measurement branches");
        }
        for (std::size_t i = 0; i < state.dimension(); ++i) {
            double p = std::norm(state[i]);
            if (p == 0.0) {
                continue;
            }
            std::uint64_t r = record;
            for (std::size_t m : tail_measures_) {
                const Instruction &inst = circuit_[m];
                r = write(r, inst.clbit->index, (i & state.bit_of(inst.qubits[0].index)) ? 1 : 0);
            }
            result_.values[r] += p;
        }
    }

    const Circuit &circuit_;
    ExactLimits limits_;
    std::size_t tail_start_;
    std::vector<std::size_t> tail_measures_;
    std::uint64_t leaves_ = 0;
    OutcomeDistribution result_;
};

}  // namespace

double OutcomeDistribution::probability(std::uint64_t outcome) const {
    auto it = values.find(outcome);
    if (it == values.end()) {
        return 0.0;
    }
    return shots == 0 ? it->second : it->second / static_cast<double>(shots);
}

double OutcomeDistribution::total() const {
    double t = 0.0;
    for (const auto &[k, v] : values) {
        t += v;
    }
    return t;
}

OutcomeDistribution OutcomeDistribution::from_records(std::span<const ShotRecord> records, std::uint32_t n_bits) {
    OutcomeDistribution d;
    d.n_bits = n_bits;
    d.shots = records.size();
    for (const auto &r : records) {
        d.values[r.bits] += 1.0;
    }
    return d;
}

std::string bitstring(std::uint64_t bits, std::uint32_t n_bits) {
    std::string s(n_bits, '0');
    for (std::uint32_t c = 0; c < n_bits; ++c) {
        if (bits & clbit_mask(n_bits, c)) {
            s[c] = '1';
        }
    }
    return s;
}

double total_variation_distance(const OutcomeDistribution &a, const OutcomeDistribution &b) {
    double sum = 0.0;
    for (const auto &[k, v] : a.values) {
        sum += std::abs(a.probability(k) - b.probability(k));
    }
    for (const auto &[k, v] : b.values) {
        if (!a.values.contains(k)) {
            sum += b.probability(k);
        }
    }
    return sum / 2;
}

OutcomeDistribution run_exact(const Circuit &circuit, const StateVector &input, const ExactLimits &limits) {
    require_valid(circuit);
    if (circuit.n_qubits() > limits.max_qubits) {
        throw std::invalid_argument("exact simulation supports at most " + std::to_string(limits.max_qubits) +
                                    " qubits");
    }
    if (input.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("input state has " + std::to_string(input.n_qubits()) +
                                    " qubits but the circuit has " + std::to_string(circuit.n_qubits()));
    }
    return BranchEnumerator(circuit, limits).run(input);
}

OutcomeDistribution run_exact(const Circuit &circuit, std::uint64_t basis_label, const ExactLimits &limits) {
    if (circuit.n_qubits() > limits.max_qubits) {
        throw std::invalid_argument("exact simulation supports at most " + std::to_string(limits.max_qubits) +
                                    " qubits");
    }
    return run_exact(circuit, StateVector::basis(circuit.n_qubits(), basis_label), limits);
}

bool is_scheduled(const Circuit &circuit) {
    return circuit.metadata_value("schedule").has_value();
}

Circuit realize_feedforward_latency(const Circuit &circuit, const TimingModel &timing) {
    if (is_scheduled(circuit) || timing.t_ff <= 0.0) {
        return circuit;
    }
    Circuit out(circuit.n_qubits(), circuit.n_clbits());
    for (const auto &[key, value] : circuit.metadata()) {
        out.set_metadata(key, value);
    }
    std::vector<bool> measured(circuit.n_qubits(), false);
    std::vector<bool> fresh(circuit.n_clbits(), false);
    for (const auto &inst : circuit.instructions()) {
        if (is_classically_controlled(inst.kind) && fresh[inst.clbit->index]) {
            for (std::uint32_t q = 0; q < circuit.n_qubits(); ++q) {
                if (!measured[q]) {
                    out.delay(q, timing.t_ff);
                }
            }
            std::fill(fresh.begin(), fresh.end(), false);
        }
        if (inst.kind == GateKind::Measure) {
            measured[inst.qubits[0].index] = true;
            fresh[inst.clbit->index] = true;
        }
        out.append(inst);
    }
    return out;
}

}  // namespace qftdyn
