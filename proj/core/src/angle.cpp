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

#include "qftdyn/angle.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qftdyn {

Angle Angle::from_radians(double radians) {
    if (!std::isfinite(radians)) {
        throw std::invalid_argument("angle must be finite");
    }
    Angle a;
    if (radians == 0.0) {
        return a;
    }
    a.radians_ = radians;
    a.dyadic_.reset();
    return a;
}

Angle Angle::dyadic_pi(std::int64_t numerator, std::uint32_t log2_denominator) {
    if (log2_denominator > 62) {
        throw std::invalid_argument("dyadic angle denominator exceeds 2^62");
    }
    if (numerator == 0) {
        return Angle{};
    }
    while (log2_denominator > 0 && numerator % 2 == 0) {
        numerator /= 2;
        log2_denominator -= 1;
    }
    Angle a;
    a.dyadic_ = DyadicAngle{numerator, log2_denominator};
    a.radians_ = std::ldexp(std::numbers::pi * static_cast<double>(numerator), -static_cast<int>(log2_denominator));
    return a;
}

Angle Angle::operator-() const {
    if (dyadic_.has_value()) {
        return dyadic_pi(-dyadic_->numerator, dyadic_->log2_denominator);
    }
    return from_radians(-radians_);
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("failed to format number");
    }
    return std::string(buf.data(), end);
}

std::string Angle::to_string() const {
    if (!dyadic_.has_value()) {
        return format_double(radians_);
    }
    if (dyadic_->numerator == 0) {
        return "0";
    }
    std::string out = dyadic_->numerator < 0 ? "-pi" : "pi";
    std::uint64_t magnitude = static_cast<std::uint64_t>(dyadic_->numerator < 0 ? -dyadic_->numerator : dyadic_->numerator);
    std::uint64_t denominator = std::uint64_t{1} << dyadic_->log2_denominator;
    if (magnitude != 1) {
        out += "*" + std::to_string(magnitude);
    }
    if (denominator != 1) {
        out += "/" + std::to_string(denominator);
    }
    return out;
}

}  // namespace qftdyn
