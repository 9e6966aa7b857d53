// Text grammar for forms, shared by the CLI and test fixtures:
//   signed terms  c * x0^a0 x1^a1 ...   with '*' and '^1' optional,
//   e.g. "2x0^4 - 4x0^3x1 + 30x0^2x1^2 - 28x0x1^3 + 17x1^4";
//   rational coefficients are written p/q.

#ifndef WARING_PARSE_HPP
#define WARING_PARSE_HPP

#include "waring/poly.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace waring {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)),
          position(pos) {}
};

namespace detail {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool done() const { return i >= s.size(); }
    char peek() const { return i < s.size() ? s[i] : '\0'; }
};

inline Int parse_uint(Cursor& c) {
    size_t start = c.i;
    std::string digits;
    while (!c.done() && std::isdigit((unsigned char)c.peek())) digits += c.s[c.i++];
    if (digits.empty()) throw ParseError("expected integer", start);
    return Int(digits);
}

}  // namespace detail

// Parses a homogeneous form.  If nvars == 0, the variable count is inferred
// as 1 + (largest variable index mentioned).
inline Poly<Rat> parse_form(const std::string& text, int nvars = 0) {
    detail::Cursor c{text};
    struct RawTerm {
        Rat coeff;
        std::vector<std::pair<int, int>> vars;  // (index, exponent)
        size_t pos;
    };
    std::vector<RawTerm> raw;
    int max_var = -1;

    c.skip_ws();
    if (c.done()) throw ParseError("empty form", 0);
    bool first = true;
    while (true) {
        c.skip_ws();
        if (c.done()) break;
        // Sign.
        int sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            sign = (c.peek() == '-') ? -1 : 1;
            ++c.i;
            c.skip_ws();
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", c.i);
        }
        first = false;

        RawTerm t;
        t.pos = c.i;
        t.coeff = Rat(sign);
        bool saw_anything = false;

        // Optional numeric coefficient (p or p/q).
        if (std::isdigit((unsigned char)c.peek())) {
            Int num = detail::parse_uint(c);
            Int den = 1;
            if (c.peek() == '/') {
                ++c.i;
                den = detail::parse_uint(c);
                if (den == 0) throw ParseError("zero denominator", c.i);
            }
            t.coeff *= Rat(num, den);
            saw_anything = true;
            c.skip_ws();
            if (c.peek() == '*') {
                ++c.i;
                c.skip_ws();
            }
        }

        // Variable factors.
        while (true) {
            c.skip_ws();
            if (c.peek() != 'x' && c.peek() != 'y') break;
            ++c.i;
            if (!std::isdigit((unsigned char)c.peek()))
                throw ParseError("expected variable index", c.i);
            Int idx = detail::parse_uint(c);
            int vi = idx.convert_to<int>();
            int e = 1;
            c.skip_ws();
            if (c.peek() == '^') {
                ++c.i;
                c.skip_ws();
                e = detail::parse_uint(c).convert_to<int>();
            }
            t.vars.emplace_back(vi, e);
            if (vi > max_var) max_var = vi;
            saw_anything = true;
            c.skip_ws();
            if (c.peek() == '*') {
                ++c.i;
                continue;
            }
        }

        if (!saw_anything)
            throw ParseError("expected a term", t.pos);
        raw.push_back(std::move(t));
    }
    if (raw.empty()) throw ParseError("empty form", 0);

    int nv = nvars > 0 ? nvars : max_var + 1;
    if (nv <= 0) throw ParseError("form mentions no variables", 0);
    if (max_var >= nv)
        throw ParseError("variable index exceeds variable count", 0);

    // Degrees must agree (homogeneity).
    int deg = -1;
    for (const auto& t : raw) {
        int d = 0;
        for (auto [vi, e] : t.vars) d += e;
        if (deg == -1)
            deg = d;
        else if (d != deg)
            throw ParseError("form is not homogeneous", t.pos);
    }

    Poly<Rat> f(nv, deg);
    for (const auto& t : raw) {
        Mono m(nv, 0);
        for (auto [vi, e] : t.vars) m[vi] += e;
        if (mono_degree(m) != deg)
            throw ParseError("form is not homogeneous", t.pos);
        f.add_term(m, t.coeff);
    }
    return f;
}

}  // namespace waring

#endif  // WARING_PARSE_HPP
