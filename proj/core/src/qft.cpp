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

#include "qftdyn/qft.hpp"

#include <bit>
#include <stdexcept>

namespace qftdyn {

namespace {

constexpr std::uint32_t kMaxQubits = 62;

void check_size(std::uint32_t n) {
    if (n < 1) {
        throw std::invalid_argument("QFT needs at least one qubit");
    }
    if (n > kMaxQubits) {
        throw std::invalid_argument("QFT builders support at most 62 qubits");
    }
}

// R_m = diag(1, e^{2 pi i / 2^m}) has angle pi / 2^(m-1).
Angle r_angle(std::uint32_t m) {
    return Angle::dyadic_pi(1, m - 1);
}

}  // namespace

BasisLabel::BasisLabel(std::uint64_t k, std::uint32_t n) : k_(k), n_(n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("basis label qubit count must be in [1, 62]");
    }
    if (k >> n != 0) {
        throw std::invalid_argument("basis label " + std::to_string(k) + " does not fit in " + std::to_string(n) +
                                    " qubits");
    }
}

std::string_view variant_name(QftVariant variant) {
    return variant == QftVariant::Unitary ? "unitary" : "dynamic";
}

QftVariant parse_variant(std::string_view name) {
    if (name == "unitary") {
        return QftVariant::Unitary;
    }
    if (name == "dynamic") {
        return QftVariant::Dynamic;
    }
    throw std::invalid_argument("unknown QFT variant '" + std::string(name) + "' (expected unitary or dynamic)");
}

Circuit build_unitary_qft(std::uint32_t n, bool with_measurement) {
    check_size(n);
    Circuit c(n, with_measurement ? n : 0);
    for (std::uint32_t j = 0; j < n; ++j) {
        c.h(j);
        for (std::uint32_t m = 2; m <= n - j; ++m) {
            c.cphase(j, j + m - 1, r_angle(m));
        }
    }
    if (with_measurement) {
        for (std::uint32_t q = 0; q < n; ++q) {
            c.measure(q, qft_output_clbit(n, q));
        }
    }
    c.set_metadata("circuit", "qft-unitary");
    return c;
}

Circuit build_dynamic_qft(std::uint32_t n) {
    check_size(n);
    Circuit c(n, n);
    for (std::uint32_t j = 0; j < n; ++j) {
        c.h(j);
        c.measure(j, qft_output_clbit(n, j));
        for (std::uint32_t i = j + 1; i < n; ++i) {
            c.classical_rz(i, qft_output_clbit(n, j), r_angle(i - j + 1));
        }
    }
    c.set_metadata("circuit", "qft-dynamic");
    return c;
}

Circuit build_qft(QftVariant variant, std::uint32_t n) {
    return variant == QftVariant::Unitary ? build_unitary_qft(n, true) : build_dynamic_qft(n);
}

Circuit build_qft_dagger_state_prep(const BasisLabel &label) {
    std::uint32_t n = label.n();
    Circuit c(n, 0);
    for (std::uint32_t q = 0; q < n; ++q) {
        c.h(q);
    }
    // Qubit q carries weight 2^(n-1-q) in j, so its relative phase in
    // sum_j e^{-2 pi i k j / 2^n} |j> is -2 pi k / 2^(q+1) = -pi k / 2^q.
    for (std::uint32_t q = 0; q < n; ++q) {
        std::uint64_t modulus = std::uint64_t{1} << (q + 1);
        auto reduced = static_cast<std::int64_t>(label.k() & (modulus - 1));
        c.rz(q, Angle::dyadic_pi(-reduced, q));
    }
    c.set_metadata("circuit", "qft-dagger-prep");
    c.set_metadata("k", std::to_string(label.k()));
    return c;
}

Circuit build_periodic_state_prep(std::uint32_t n, std::uint64_t offset, std::uint64_t period) {
    check_size(n);
    if (!std::has_single_bit(period)) {
        throw std::invalid_argument("period must be a power of two");
    }
    auto low_bits = static_cast<std::uint32_t>(std::countr_zero(period));
    if (low_bits > n) {
        throw std::invalid_argument("period must divide 2^n");
    }
    if (offset >= period) {
        throw std::invalid_argument("offset must lie in [0, period)");
    }
    Circuit c(n, 0);
    for (std::uint32_t q = 0; q < n - low_bits; ++q) {
        c.h(q);
    }
    for (std::uint32_t b = 0; b < low_bits; ++b) {
        if ((offset >> b) & 1) {
            c.x(n - 1 - b);
        }
    }
    c.set_metadata("circuit", "periodic-prep");
    return c;
}

}  // namespace qftdyn
