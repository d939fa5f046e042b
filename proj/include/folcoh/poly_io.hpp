#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "folcoh/polynomial.hpp"

namespace folcoh {

/// Polynomial text format.
///
/// Terms are signed and written as  c name^e name^e ...  where c is a
/// rational "p/q" or a Gaussian rational "(p/q+r/s*I)".  A coefficient of 1
/// is omitted on non-constant terms; exponents of 1 are omitted.  Terms are
/// printed in ascending graded-lex order, factors are separated by one
/// space, and the zero polynomial prints as "0".  The parser ignores all
/// whitespace, accepts optional '*' between factors, and reads every string
/// the printer produces back to the identical polynomial.
inline std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Scalar shown = c;
        if (c.is_real()) {
            bool negative = sgn(c.re()) < 0;
            if (negative) shown = -c;
            out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
        } else if (!first) {
            out += " + ";
        }
        first = false;

        std::string factors;
        for (std::size_t s = 0; s < m.size(); ++s) {
            if (m[s] == 0) continue;
            if (!factors.empty()) factors += ' ';
            factors += p.coords()->name(s);
            if (m[s] > 1) factors += "^" + std::to_string(m[s]);
        }
        if (factors.empty()) {
            out += shown.str();
        } else if (shown.is_one()) {
            out += factors;
        } else {
            out += shown.str() + " " + factors;
        }
    }
    return out;
}

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, Coords coords) : coords_(std::move(coords)) {
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (!std::isspace(static_cast<unsigned char>(text[i]))) {
                chars_.push_back(text[i]);
                columns_.push_back(i + 1);
            }
        }
    }

    Polynomial parse() {
        Polynomial out(coords_);
        if (chars_.empty()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            long sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = next() == '-' ? -1 : 1;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            parse_term(out, sign);
        }
        return out;
    }

private:
    bool at_end() const { return pos_ >= chars_.size(); }
    char peek() const { return at_end() ? '\0' : chars_[pos_]; }
    char next() { return chars_[pos_++]; }

    [[noreturn]] void fail(const std::string& message) const {
        std::size_t column = pos_ < columns_.size() ? columns_[pos_]
                             : columns_.empty()    ? 1
                                                   : columns_.back() + 1;
        throw ParseError(message, column);
    }

    std::string digits() {
        std::string d;
        while (std::isdigit(static_cast<unsigned char>(peek()))) d += next();
        return d;
    }

    mpq_class rational() {
        std::string num = digits();
        if (num.empty()) fail("expected digits");
        std::string text = num;
        if (peek() == '/') {
            next();
            std::string den = digits();
            if (den.empty()) fail("expected denominator");
            if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
            text += "/" + den;
        }
        mpq_class q(text, 10);
        q.canonicalize();
        return q;
    }

    // ( [sign] part (sign part)* )  with part = rational ["*I"] | "I"
    Scalar gaussian() {
        next();  // '('
        Scalar value;
        bool first = true;
        while (peek() != ')') {
            if (at_end()) fail("unterminated coefficient");
            long sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = next() == '-' ? -1 : 1;
            } else if (!first) {
                fail("expected '+' or '-' inside coefficient");
            }
            first = false;
            if (peek() == 'I') {
                next();
                value += Scalar(mpq_class(0), mpq_class(sign));
                continue;
            }
            mpq_class q = rational() * sign;
            if (peek() == '*' && pos_ + 1 < chars_.size() && chars_[pos_ + 1] == 'I') {
                pos_ += 2;
                value += Scalar(mpq_class(0), q);
            } else {
                value += Scalar(q);
            }
        }
        if (first) fail("empty coefficient");
        next();  // ')'
        return value;
    }

    std::size_t coordinate() {
        std::size_t start = pos_;
        std::string name;
        while (std::isalpha(static_cast<unsigned char>(peek()))) name += next();
        while (std::isdigit(static_cast<unsigned char>(peek()))) name += next();
        auto slot = coords_->index_of(name);
        if (!slot) {
            pos_ = start;
            fail("unknown coordinate '" + name + "'");
        }
        return *slot;
    }

    void parse_term(Polynomial& out, long sign) {
        Scalar coeff(sign);
        bool has_coeff = false;
        if (peek() == '(') {
            coeff *= gaussian();
            has_coeff = true;
        } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff *= Scalar(rational());
            has_coeff = true;
        }
        Monomial m(coords_->size());
        bool has_factor = false;
        while (!at_end() && peek() != '+' && peek() != '-') {
            if (peek() == '*') {
                next();
                if (at_end()) fail("dangling '*'");
            }
            if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected coordinate");
            std::size_t slot = coordinate();
            unsigned long e = 1;
            if (peek() == '^') {
                next();
                std::string d = digits();
                if (d.empty()) fail("expected exponent");
                e = std::stoul(d);
            }
            m[slot] += static_cast<Monomial::Exponent>(e);
            has_factor = true;
        }
        if (!has_coeff && !has_factor) fail("empty term");
        out.add_term(std::move(m), coeff);
    }

    Coords coords_;
    std::string chars_;
    std::vector<std::size_t> columns_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const Coords& coords) {
    return detail::PolyParser(text, coords).parse();
}

}  // namespace folcoh
