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

#ifndef QFTDYN_ANGLE_HPP
#define QFTDYN_ANGLE_HPP

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

namespace qftdyn {

/// pi * numerator / 2^log2_denominator, kept in lowest terms.
struct DyadicAngle {
    std::int64_t numerator = 0;
    std::uint32_t log2_denominator = 0;

    bool operator==(const DyadicAngle &) const = default;
};

/// A rotation angle in radians with an optional exact dyadic-multiple-of-pi tag.
///
/// Angles built through `dyadic_pi` carry the tag and their radian value is
/// always recomputed from it, so two constructions of pi/2^k compare equal
/// bit for bit. Zero is always tagged.
class Angle {
   public:
    Angle() = default;

    static Angle from_radians(double radians);
    static Angle dyadic_pi(std::int64_t numerator, std::uint32_t log2_denominator);

    double radians() const {
        return radians_;
    }
    const std::optional<DyadicAngle> &dyadic() const {
        return dyadic_;
    }
    bool is_zero() const {
        return radians_ == 0.0;
    }

    Angle operator-() const;
    bool operator==(const Angle &) const = default;

    /// Canonical text rendering: `0`, `[-]pi/Q`, `[-]pi*P/Q` or shortest round-trip decimal.
    std::string to_string() const;

   private:
    double radians_ = 0.0;
    std::optional<DyadicAngle> dyadic_ = DyadicAngle{};
};

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace qftdyn

#endif
