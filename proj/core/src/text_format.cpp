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

#include "qftdyn/text_format.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace qftdyn {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &message)
    : std::runtime_error(
          "line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : std::string()) + ": " +
          message),
      line_(line),
      column_(column) {
}

namespace {

struct AngleSyntaxError {
    std::size_t offset;
    std::string message;
};

std::optional<std::uint64_t> parse_uint(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

Angle parse_angle_or_throw(std::string_view text) {
    std::string_view s = text;
    if (s.empty()) {
        throw AngleSyntaxError{0, "empty angle"};
    }
    bool negative = false;
    std::size_t offset = 0;
    std::string_view body = s;
    if (body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
        offset = 1;
    }
    if (body.substr(0, 2) != "pi") {
        double v = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || end != s.data() + s.size()) {
            throw AngleSyntaxError{0, "malformed angle '" + std::string(text) + "'"};
        }
        if (!std::isfinite(v)) {
            throw AngleSyntaxError{0, "angle must be finite"};
        }
        return Angle::from_radians(v);
    }
    body.remove_prefix(2);
    offset += 2;

    std::uint64_t numerator = 1;
    std::uint64_t denominator = 1;
    if (!body.empty() && body.front() == '*') {
        body.remove_prefix(1);
        offset += 1;
        auto slash = body.find('/');
        auto p = parse_uint(body.substr(0, slash));
        if (!p.has_value()) {
            throw AngleSyntaxError{offset, "expected integer numerator after 'pi*'"};
        }
        numerator = *p;
        if (slash == std::string_view::npos) {
            body = {};
        } else {
            offset += slash;
            body.remove_prefix(slash);
        }
    }
    if (!body.empty()) {
        if (body.front() != '/') {
            throw AngleSyntaxError{offset, "expected '/' or '*' after 'pi'"};
        }
        std::string_view den = body.substr(1);
        std::optional<std::uint64_t> q;
        if (auto caret = den.find('^'); caret != std::string_view::npos) {
            // 2^k spelling of a power-of-two denominator.
            auto base = parse_uint(den.substr(0, caret));
            auto exponent = parse_uint(den.substr(caret + 1));
            if (base == std::uint64_t{2} && exponent.has_value() && *exponent < 63) {
                q = std::uint64_t{1} << *exponent;
            }
        } else {
            q = parse_uint(den);
        }
        if (!q.has_value() || *q == 0) {
            throw AngleSyntaxError{offset + 1, "expected positive integer denominator"};
        }
        denominator = *q;
    }
    if (std::has_single_bit(denominator) && numerator <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        auto signed_num = static_cast<std::int64_t>(numerator);
        return Angle::dyadic_pi(negative ? -signed_num : signed_num,
                                static_cast<std::uint32_t>(std::countr_zero(denominator)));
    }
    double v = std::numbers::pi * static_cast<double>(numerator) / static_cast<double>(denominator);
    return Angle::from_radians(negative ? -v : v);
}

class LineCursor {
   public:
    LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {
    }

    [[noreturn]] void fail(const std::string &message) const {
        throw ParseError(line_, pos_ + 1, message);
    }
    [[noreturn]] void fail_at(std::size_t pos, const std::string &message) const {
        throw ParseError(line_, pos + 1, message);
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) {
            ++pos_;
        }
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    std::size_t pos() const {
        return pos_;
    }

    std::string_view word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect_keyword(std::string_view keyword) {
        skip_ws();
        std::size_t start = pos_;
        if (word() != keyword) {
            fail_at(start, "expected '" + std::string(keyword) + "'");
        }
    }

    std::uint64_t integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        auto v = parse_uint(text_.substr(start, pos_ - start));
        if (!v.has_value()) {
            fail_at(start, "expected a non-negative integer");
        }
        return *v;
    }

    std::uint32_t register_index(char prefix) {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || text_[pos_] != prefix) {
            fail(std::string("expected ") + (prefix == 'q' ? "qubit" : "classical bit") + " '" + prefix + "<index>'");
        }
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            fail_at(start, std::string("expected index after '") + prefix + "'");
        }
        std::uint64_t v = integer();
        if (v > std::numeric_limits<std::uint32_t>::max() / 2) {
            fail_at(start, "register index too large");
        }
        return static_cast<std::uint32_t>(v);
    }

    /// Text up to (not including) the closing parenthesis, which is consumed.
    std::pair<std::string_view, std::size_t> parenthesized() {
        expect('(');
        skip_ws();
        std::size_t start = pos_;
        std::size_t close = text_.find(')', pos_);
        if (close == std::string_view::npos) {
            fail("missing ')'");
        }
        std::string_view inner = text_.substr(start, close - start);
        while (!inner.empty() && (inner.back() == ' ' || inner.back() == '\t')) {
            inner.remove_suffix(1);
        }
        pos_ = close + 1;
        return {inner, start};
    }

    Angle angle() {
        auto [inner, start] = parenthesized();
        try {
            return parse_angle_or_throw(inner);
        } catch (const AngleSyntaxError &e) {
            fail_at(start + e.offset, e.message);
        }
    }

    double duration() {
        auto [inner, start] = parenthesized();
        std::size_t unit = inner.size();
        while (unit > 0 && std::isalpha(static_cast<unsigned char>(inner[unit - 1]))) {
            --unit;
        }
        if (inner.substr(unit) != "ns") {
            fail_at(start + unit, "delay duration needs the unit 'ns'");
        }
        std::string_view number = inner.substr(0, unit);
        while (!number.empty() && (number.back() == ' ' || number.back() == '\t')) {
            number.remove_suffix(1);
        }
        double v = 0;
        auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), v);
        if (number.empty() || ec != std::errc{} || end != number.data() + number.size()) {
            fail_at(start, "malformed delay duration");
        }
        if (!std::isfinite(v) || v < 0) {
            fail_at(start, "delay duration must be finite and non-negative");
        }
        return v;
    }

   private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace

Angle parse_angle(std::string_view text) {
    try {
        return parse_angle_or_throw(text);
    } catch (const AngleSyntaxError &e) {
        throw std::invalid_argument(e.message);
    }
}

Circuit parse_text(std::string_view source) {
    std::optional<std::uint32_t> declared_qubits;
    std::optional<std::uint32_t> declared_clbits;
    std::vector<Instruction> instructions;
    std::vector<std::size_t> instruction_lines;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::uint32_t max_qubit = 0;
    std::uint32_t max_clbit = 0;
    bool any_clbit = false;

    std::size_t line_no = 0;
    std::size_t offset = 0;
    while (offset <= source.size()) {
        std::size_t nl = source.find('\n', offset);
        std::string_view line = source.substr(offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset);
        offset = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
        ++line_no;

        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            std::string_view comment = line.substr(hash);
            if (comment.substr(0, 2) == "#@") {
                std::string_view kv = comment.substr(2);
                while (!kv.empty() && kv.front() == ' ') {
                    kv.remove_prefix(1);
                }
                while (!kv.empty() && (kv.back() == ' ' || kv.back() == '\r')) {
                    kv.remove_suffix(1);
                }
                auto eq = kv.find('=');
                if (eq == std::string_view::npos || eq == 0) {
                    throw ParseError(line_no, hash + 1, "metadata comment must look like '#@ key=value'");
                }
                metadata.emplace_back(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
            }
            line = line.substr(0, hash);
        }

        LineCursor cur(line, line_no);
        if (cur.at_end()) {
            continue;
        }
        std::size_t keyword_pos = cur.pos();
        std::string_view keyword = cur.word();
        if (keyword.empty()) {
            cur.fail("expected an instruction");
        }

        if (keyword == "qubits" || keyword == "clbits") {
            if (!instructions.empty()) {
                cur.fail_at(keyword_pos, "'" + std::string(keyword) + "' header must precede instructions");
            }
            auto &slot = keyword == "qubits" ? declared_qubits : declared_clbits;
            if (slot.has_value()) {
                cur.fail_at(keyword_pos, "duplicate '" + std::string(keyword) + "' header");
            }
            std::uint64_t v = cur.integer();
            if (v > 1u << 20) {
                cur.fail_at(keyword_pos, "register size too large");
            }
            slot = static_cast<std::uint32_t>(v);
            if (!cur.at_end()) {
                cur.fail("unexpected trailing text");
            }
            continue;
        }

        Instruction inst;
        if (keyword == "h" || keyword == "x" || keyword == "y") {
            std::uint32_t q = cur.register_index('q');
            inst = keyword == "h" ? Instruction::h(q) : keyword == "x" ? Instruction::x(q) : Instruction::y(q);
        } else if (keyword == "rz") {
            Angle a = cur.angle();
            inst = Instruction::rz(cur.register_index('q'), a);
        } else if (keyword == "cphase") {
            Angle a = cur.angle();
            std::uint32_t q0 = cur.register_index('q');
            std::uint32_t q1 = cur.register_index('q');
            inst = Instruction::cphase(q0, q1, a);
        } else if (keyword == "measure") {
            std::uint32_t q = cur.register_index('q');
            cur.expect('-');
            cur.expect('>');
            inst = Instruction::measure(q, cur.register_index('c'));
        } else if (keyword == "crz") {
            Angle a = cur.angle();
            std::uint32_t q = cur.register_index('q');
            cur.expect_keyword("if");
            inst = Instruction::classical_rz(q, cur.register_index('c'), a);
        } else if (keyword == "cx") {
            std::uint32_t q = cur.register_index('q');
            cur.expect_keyword("if");
            inst = Instruction::classical_x(q, cur.register_index('c'));
        } else if (keyword == "delay") {
            double t = cur.duration();
            inst = Instruction::delay(cur.register_index('q'), t);
        } else if (keyword == "barrier") {
            inst = Instruction::barrier();
        } else {
            throw ParseError(line_no, keyword_pos + 1, "unknown gate '" + std::string(keyword) + "'");
        }
        if (!cur.at_end()) {
            cur.fail("unexpected trailing text");
        }

        for (QubitId q : inst.qubits) {
            if (declared_qubits.has_value() && q.index >= *declared_qubits) {
                throw ParseError(line_no, 0,
                                 "qubit q" + std::to_string(q.index) + " out of range for " +
                                     std::to_string(*declared_qubits) + " qubits");
            }
            max_qubit = std::max(max_qubit, q.index);
        }
        if (inst.clbit.has_value()) {
            if (declared_clbits.has_value() && inst.clbit->index >= *declared_clbits) {
                throw ParseError(line_no, 0,
                                 "classical bit c" + std::to_string(inst.clbit->index) + " out of range for " +
                                     std::to_string(*declared_clbits) + " classical bits");
            }
            max_clbit = std::max(max_clbit, inst.clbit->index);
            any_clbit = true;
        }
        instructions.push_back(std::move(inst));
        instruction_lines.push_back(line_no);
    }

    std::uint32_t n_qubits = declared_qubits.value_or(max_qubit + 1);
    std::uint32_t n_clbits = declared_clbits.value_or(any_clbit ? max_clbit + 1 : 0);
    Circuit circuit(n_qubits, n_clbits);
    for (auto &[k, v] : metadata) {
        circuit.set_metadata(k, v);
    }
    for (auto &inst : instructions) {
        circuit.append(std::move(inst));
    }

    auto violations = validate(circuit);
    if (!violations.empty()) {
        const auto &v = violations.front();
        std::size_t line = v.instruction.has_value() ? instruction_lines[*v.instruction] : 1;
        throw ParseError(line, 0, v.message);
    }
    return circuit;
}

std::string print_text(const Circuit &circuit) {
    require_valid(circuit);
    std::ostringstream out;
    out << "qubits " << circuit.n_qubits() << "\n";
    out << "clbits " << circuit.n_clbits() << "\n";
    for (const auto &[key, value] : circuit.metadata()) {
        if (key.empty() || key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos ||
            key.front() == ' ' || key.back() == ' ' || (!value.empty() && value.back() == ' ')) {
            throw std::invalid_argument("metadata entry '" + key + "' cannot be rendered on one line");
        }
        out << "#@ " << key << "=" << value << "\n";
    }
    for (const auto &inst : circuit.instructions()) {
        auto q = [&](std::size_t i) {
            return "q" + std::to_string(inst.qubits[i].index);
        };
        auto c = [&]() {
            return "c" + std::to_string(inst.clbit->index);
        };
        switch (inst.kind) {
            case GateKind::H:
                out << "h " << q(0);
                break;
            case GateKind::X:
                out << "x " << q(0);
                break;
            case GateKind::Y:
                out << "y " << q(0);
                break;
            case GateKind::Rz:
                out << "rz(" << inst.angle.to_string() << ") " << q(0);
                break;
            case GateKind::CPhase:
                out << "cphase(" << inst.angle.to_string() << ") " << q(0) << " " << q(1);
                break;
            case GateKind::Measure:
                out << "measure " << q(0) << " -> " << c();
                break;
            case GateKind::ClassicalRz:
                out << "crz(" << inst.angle.to_string() << ") " << q(0) << " if " << c();
                break;
            case GateKind::ClassicalX:
                out << "cx " << q(0) << " if " << c();
                break;
            case GateKind::Delay:
                out << "delay(" << format_double(inst.duration_ns) << " ns) " << q(0);
                break;
            case GateKind::Barrier:
                out << "barrier";
                break;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace qftdyn
