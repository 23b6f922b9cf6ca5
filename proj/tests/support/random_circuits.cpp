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


#include "random_circuits.hpp"

#include <algorithm>
#include <numbers>
#include <vector>

namespace qftdyn::testing {

namespace {

Angle random_angle(std::mt19937_64 &rng, bool arbitrary) {
    std::uniform_int_distribution<int> coin(0, 3);
    if (arbitrary && coin(rng) == 0) {
        std::uniform_real_distribution<double> u(-2 * std::numbers::pi, 2 * std::numbers::pi);
        return Angle::from_radians(u(rng));
    }
    std::uniform_int_distribution<std::uint32_t> log2(0, 6);
    std::uint32_t k = log2(rng);
    std::int64_t limit = std::int64_t{1} << (k + 1);
    std::uniform_int_distribution<std::int64_t> num(-limit, limit);
    return Angle::dyadic_pi(num(rng), k);
}

std::uint32_t pick(std::mt19937_64 &rng, const std::vector<std::uint32_t> &from) {
    std::uniform_int_distribution<std::size_t> d(0, from.size() - 1);
    return from[d(rng)];
}

}  // namespace

Circuit random_circuit(std::mt19937_64 &rng, const RandomCircuitOptions &o) {
    Circuit c(o.n_qubits, o.n_clbits);
    if (o.metadata) {
        c.set_metadata("origin", "random");
        c.set_metadata("stage", std::to_string(rng() % 100));
    }
    std::vector<bool> measured(o.n_qubits, false);
    std::vector<std::uint32_t> written;
    std::uniform_int_distribution<int> kind(0, 10);
    std::uniform_real_distribution<double> duration(0.0, 1500.0);
    for (std::size_t i = 0; i < o.length; ++i) {
        std::vector<std::uint32_t> live;
        for (std::uint32_t q = 0; q < o.n_qubits; ++q) {
            if (!measured[q]) {
                live.push_back(q);
            }
        }
        if (live.empty()) {
            break;
        }
        int k = kind(rng);
        std::uint32_t q = pick(rng, live);
        switch (k) {
            case 0:
                c.h(q);
                break;
            case 1:
                c.x(q);
                break;
            case 2:
                c.y(q);
                break;
            case 3:
                c.rz(q, random_angle(rng, o.arbitrary_angles));
                break;
            case 4:
            case 5:
                if (live.size() >= 2) {
                    std::uint32_t p = q;
                    while (p == q) {
                        p = pick(rng, live);
                    }
                    c.cphase(q, p, random_angle(rng, o.arbitrary_angles));
                } else {
                    c.h(q);
                }
                break;
            case 6:
                if (o.measurements && o.n_clbits > 0) {
                    std::uint32_t cb = static_cast<std::uint32_t>(rng() % o.n_clbits);
                    c.measure(q, cb);
                    measured[q] = true;
                    written.push_back(cb);
                } else {
                    c.h(q);
                }
                break;
            case 7:
                if (o.classical_control && !written.empty()) {
                    c.classical_rz(q, pick(rng, written), random_angle(rng, o.arbitrary_angles));
                } else {
                    c.rz(q, random_angle(rng, o.arbitrary_angles));
                }
                break;
            case 8:
                if (o.classical_control && !written.empty()) {
                    c.classical_x(q, pick(rng, written));
                } else {
                    c.x(q);
                }
                break;
            case 9:
                if (o.delays) {
                    // Whole and fractional nanoseconds both occur in practice.
                    double t = (rng() & 1) ? std::round(duration(rng)) : duration(rng);
                    c.delay(q, t);
                } else {
                    c.h(q);
                }
                break;
            default:
                if (o.barriers) {
                    c.barrier();
                } else {
                    c.h(q);
                }
                break;
        }
    }
    return c;
}

Circuit random_rewritable_circuit(std::mt19937_64 &rng, std::uint32_t n, std::size_t body_length, bool blockers) {
    // Body first, then decide where each measurement goes.
    struct Op {
        int kind;
        std::uint32_t a, b;
        Angle angle;
    };
    std::vector<Op> body;
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<std::uint32_t> qubit(0, n - 1);
    for (std::size_t i = 0; i < body_length; ++i) {
        int k = kind(rng);
        std::uint32_t a = qubit(rng);
        if (k >= 2 && n >= 2) {
            std::uint32_t b = a;
            while (b == a) {
                b = qubit(rng);
            }
            body.push_back({2, a, b, random_angle(rng, true)});
        } else if (k == 1) {
            body.push_back({1, a, a, random_angle(rng, true)});
        } else {
            body.push_back({0, a, a, Angle{}});
        }
    }
    std::vector<std::size_t> last_use(n, 0);
    for (std::size_t i = 0; i < body.size(); ++i) {
        last_use[body[i].a] = i + 1;
        last_use[body[i].b] = i + 1;
    }
    std::vector<std::uint32_t> clbit(n);
    for (std::uint32_t q = 0; q < n; ++q) {
        clbit[q] = q;
    }
    std::shuffle(clbit.begin(), clbit.end(), rng);
    // Measurement slot for q: any point in [last_use, body.size()].
    std::vector<std::size_t> slot(n);
    for (std::uint32_t q = 0; q < n; ++q) {
        std::uniform_int_distribution<std::size_t> s(last_use[q], body.size());
        slot[q] = s(rng);
    }

    Circuit c(n, n);
    std::vector<std::uint32_t> written;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        for (std::uint32_t q = 0; q < n; ++q) {
            if (slot[q] == i) {
                c.measure(q, clbit[q]);
                written.push_back(clbit[q]);
            }
        }
        if (i == body.size()) {
            break;
        }
        const auto &op = body[i];
        if (op.kind == 0) {
            c.h(op.a);
        } else if (op.kind == 1) {
            c.rz(op.a, op.angle);
        } else {
            c.cphase(op.a, op.b, op.angle);
        }
        if (blockers && !written.empty() && rng() % 6 == 0) {
            // Target a qubit that is still live.
            std::vector<std::uint32_t> live;
            for (std::uint32_t q = 0; q < n; ++q) {
                if (slot[q] > i) {
                    live.push_back(q);
                }
            }
            if (!live.empty()) {
                c.classical_rz(pick(rng, live), pick(rng, written), random_angle(rng, false));
            }
        }
    }
    return c;
}

}  // namespace qftdyn::testing
