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

#ifndef QFTDYN_TEXT_FORMAT_HPP
#define QFTDYN_TEXT_FORMAT_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qftdyn/circuit.hpp"

namespace qftdyn {

/// Line-oriented circuit text format.
///
///     qubits N
///     clbits M
///     h qI | x qI | y qI
///     rz(ANGLE) qI
///     cphase(ANGLE) qI qJ
///     measure qI -> cK
///     crz(ANGLE) qI if cK
///     cx qI if cK
///     delay(T ns) qI
///     barrier
///
/// ANGLE is a decimal number, `[-]pi/Q` or `[-]pi*P/Q`; power-of-two Q keeps the
/// angle exact. `#` starts a comment. A comment of the form `#@ key=value`
/// carries circuit metadata. Missing `qubits` / `clbits` headers are inferred
/// from the highest index used.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, const std::string &message);

    /// 1-based line number.
    std::size_t line() const {
        return line_;
    }
    /// 1-based column, or 0 for errors that concern a whole line.
    std::size_t column() const {
        return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
};

Circuit parse_text(std::string_view source);

/// Canonical rendering; `parse_text(print_text(c)) == c` for every valid circuit.
std::string print_text(const Circuit &circuit);

/// Parses a single ANGLE token.
Angle parse_angle(std::string_view text);

}  // namespace qftdyn

#endif
