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

#ifndef QFTDYN_NOISE_HPP
#define QFTDYN_NOISE_HPP

#include "qftdyn/circuit.hpp"

namespace qftdyn {

/// Error channels attached to instruction classes.
///
/// Depolarizing channels act after each physical gate as
/// rho -> (1 - p) rho + p I/d (so p = 1 fully randomizes the touched qubits).
/// RZ / CLASSICAL_RZ are frame changes and never noisy. MEASURE is ideal apart
/// from the classical flip of the recorded bit. Idle noise acts only during DELAY.
struct NoiseModel {
    /// Depolarizing probability after H, X, Y and CLASSICAL_X.
    double p1 = 0.0;
    /// Depolarizing probability after CPHASE.
    double p2 = 0.0;
    /// Probability that a recorded measurement bit is flipped.
    double eps_ro = 0.0;
    /// Standard deviation (rad/ns) of each qubit's quasi-static Z detuning, drawn once per shot.
    double idle_detuning_sigma = 0.0;
    /// Markovian pure-dephasing rate (1/ns) during DELAY; coherences decay as exp(-rate t).
    double dephasing_rate = 0.0;
    /// Extra rotation angle (rad) on every X / Y pulse, which then rotates by pi + this.
    double pulse_over_rotation = 0.0;
    /// Whether engines idle unmeasured qubits for the feed-forward latency of
    /// circuits that have not been through the DD scheduler.
    bool apply_idle_during_feedforward = true;

    static NoiseModel noiseless() {
        return {};
    }
    /// p1 = p2 = 1: every physical gate fully depolarizes its qubits.
    static NoiseModel fully_depolarizing();
    /// p2 = 0.005, eps_ro = 0.01, sigma = 5e-4 rad/ns.
    static NoiseModel standard();

    bool is_noiseless() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool operator==(const NoiseModel &) const = default;
};

/// Durations (ns) of the physical operations; drives idle-window geometry.
struct TimingModel {
    double t_1q_gate = 0.0;
    double t_cphase = 560.0;
    double t_measure_pulse = 781.0;
    double t_post_measure_delay = 463.0;
    double t_ff = 653.0;

    double t_readout() const {
        return t_measure_pulse + t_post_measure_delay;
    }
    /// Sets the total readout length, shortening the measure pulse only if needed.
    void set_readout(double total_ns);

    /// Duration of an instruction under this model (DELAY uses its own length).
    double duration_of(const Instruction &inst) const;

    void validate() const;

    bool operator==(const TimingModel &) const = default;
};

}  // namespace qftdyn

#endif
