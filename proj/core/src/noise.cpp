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

#include "qftdyn/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qftdyn {

namespace {

void check_probability(double p, const char *field) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string("noise.") + field + " must lie in [0, 1]");
    }
}

void check_non_negative(double v, const char *prefix, const char *field) {
    if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument(std::string(prefix) + field + " must be finite and non-negative");
    }
}

}  // namespace

NoiseModel NoiseModel::fully_depolarizing() {
    NoiseModel m;
    m.p1 = 1.0;
    m.p2 = 1.0;
    return m;
}

NoiseModel NoiseModel::standard() {
    NoiseModel m;
    m.p2 = 0.005;
    m.eps_ro = 0.01;
    m.idle_detuning_sigma = 5e-4;
    return m;
}

bool NoiseModel::is_noiseless() const {
    return p1 == 0 && p2 == 0 && eps_ro == 0 && idle_detuning_sigma == 0 && dephasing_rate == 0 &&
           pulse_over_rotation == 0;
}

void NoiseModel::validate() const {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    check_probability(eps_ro, "eps_ro");
    check_non_negative(idle_detuning_sigma, "noise.", "idle_detuning_sigma");
    check_non_negative(dephasing_rate, "noise.", "dephasing_rate");
    if (!std::isfinite(pulse_over_rotation)) {
        throw std::invalid_argument("noise.pulse_over_rotation must be finite");
    }
}

void TimingModel::set_readout(double total_ns) {
    check_non_negative(total_ns, "timing.", "readout");
    t_measure_pulse = std::min(t_measure_pulse, total_ns);
    t_post_measure_delay = total_ns - t_measure_pulse;
}

double TimingModel::duration_of(const Instruction &inst) const {
    switch (inst.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::ClassicalX:
            return t_1q_gate;
        case GateKind::CPhase:
            return t_cphase;
        case GateKind::Measure:
            return t_readout();
        case GateKind::Delay:
            return inst.duration_ns;
        case GateKind::Rz:
        case GateKind::ClassicalRz:
        case GateKind::Barrier:
            return 0.0;
    }
    return 0.0;
}

void TimingModel::validate() const {
    check_non_negative(t_1q_gate, "timing.", "t_1q_gate");
    check_non_negative(t_cphase, "timing.", "t_cphase");
    check_non_negative(t_measure_pulse, "timing.", "t_measure_pulse");
    check_non_negative(t_post_measure_delay, "timing.", "t_post_measure_delay");
    check_non_negative(t_ff, "timing.", "t_ff");
}

}  // namespace qftdyn
