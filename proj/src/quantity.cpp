#include "fluidlogic/quantity.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace fluidlogic {

std::string ParseError::format(const std::string& msg, SourceLoc where) {
    if (where.line <= 0) return msg;
    return "line " + std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + msg;
}

const char* dimension_name(Dimension d) {
    switch (d) {
        case Dimension::pressure: return "pressure";
        case Dimension::length: return "length";
        case Dimension::flow: return "flow";
        case Dimension::viscosity: return "viscosity";
        case Dimension::resistance: return "resistance";
        case Dimension::dimensionless: return "dimensionless";
    }
    return "?";
}

namespace {

struct UnitSpec {
    const char* suffix;
    Dimension dim;
    int pow10;  // SI value = written value * 10^pow10
};

// Longest suffixes first so "kPa" wins over "Pa" and "Pa.s/ml" over "Pa.s".
constexpr std::array<UnitSpec, 10> kUnits{{
    {"Pa.s/m3", Dimension::resistance, 0},
    {"Pa.s/ml", Dimension::resistance, 6},
    {"Pa.s", Dimension::viscosity, 0},
    {"m3/s", Dimension::flow, 0},
    {"ml/s", Dimension::flow, -6},
    {"kPa", Dimension::pressure, 3},
    {"Pa", Dimension::pressure, 0},
    {"mm", Dimension::length, -3},
    {"cm", Dimension::length, -2},
    {"m", Dimension::length, 0},
}};

bool is_number_char(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' ||
           c == 'e' || c == 'E';
}

// Splits "2.5ml/s" into number text and unit suffix. The numeric part ends at
// the first character that cannot continue a float literal; 'e'/'E' only
// counts as part of the number when followed by a digit or sign.
size_t number_length(std::string_view tok) {
    size_t i = 0;
    while (i < tok.size() && is_number_char(tok[i])) {
        if (tok[i] == 'e' || tok[i] == 'E') {
            const bool exp_follows =
                i + 1 < tok.size() &&
                (std::isdigit(static_cast<unsigned char>(tok[i + 1])) || tok[i + 1] == '-' ||
                 tok[i + 1] == '+');
            if (!exp_follows) break;
        }
        if ((tok[i] == '-' || tok[i] == '+') && i != 0) {
            const char prev = tok[i - 1];
            if (prev != 'e' && prev != 'E') break;
        }
        ++i;
    }
    return i;
}

double parse_scaled(std::string_view num, int pow10, SourceLoc loc) {
    // Apply the decimal unit factor inside the literal so the conversion to
    // binary happens once: strtod("419.6e6") == nearest double to 4.196e8.
    std::string text(num);
    if (pow10 != 0) {
        auto epos = text.find_first_of("eE");
        if (epos == std::string::npos) {
            text += "e" + std::to_string(pow10);
        } else {
            long exp = std::strtol(text.c_str() + epos + 1, nullptr, 10);
            text = text.substr(0, epos) + "e" + std::to_string(exp + pow10);
        }
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw ParseError("malformed number '" + std::string(num) + "'", loc);
    if (!std::isfinite(v))
        throw ParseError("non-finite value '" + std::string(num) + "'", loc);
    return v;
}

bool round_trips(double si, int pow10, const std::string& text) {
    char* end = nullptr;
    std::string probe = text;
    auto epos = probe.find_first_of("eE");
    if (epos == std::string::npos) {
        probe += "e" + std::to_string(pow10);
    } else {
        long exp = std::strtol(probe.c_str() + epos + 1, nullptr, 10);
        probe = probe.substr(0, epos) + "e" + std::to_string(exp + pow10);
    }
    const double back = std::strtod(probe.c_str(), &end);
    return back == si;
}

std::string shortest_repr(double scaled) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, scaled);
    return std::string(buf, res.ptr);
}

}  // namespace

Quantity parse_quantity(std::string_view token, Dimension expected, SourceLoc loc) {
    if (token.empty()) throw ParseError("empty value", loc);
    const size_t nlen = number_length(token);
    if (nlen == 0) throw ParseError("expected a number in '" + std::string(token) + "'", loc);
    const std::string_view num = token.substr(0, nlen);
    const std::string_view suffix = token.substr(nlen);

    if (suffix.empty()) {
        // bare number: SI in the expected dimension
        return Quantity{parse_scaled(num, 0, loc), expected};
    }
    for (const auto& u : kUnits) {
        if (suffix == u.suffix) {
            if (u.dim != expected)
                throw ParseError("unit '" + std::string(suffix) + "' is a " +
                                     dimension_name(u.dim) + ", expected " +
                                     dimension_name(expected),
                                 loc);
            return Quantity{parse_scaled(num, u.pow10, loc), expected};
        }
    }
    throw ParseError("unknown unit '" + std::string(suffix) + "'", loc);
}

Quantity parse_any_quantity(std::string_view token, SourceLoc loc) {
    if (token.empty()) throw ParseError("empty value", loc);
    const size_t nlen = number_length(token);
    if (nlen == 0) throw ParseError("expected a number in '" + std::string(token) + "'", loc);
    const std::string_view num = token.substr(0, nlen);
    const std::string_view suffix = token.substr(nlen);
    if (suffix.empty()) return Quantity{parse_scaled(num, 0, loc), Dimension::dimensionless};
    for (const auto& u : kUnits)
        if (suffix == u.suffix) return Quantity{parse_scaled(num, u.pow10, loc), u.dim};
    throw ParseError("unknown unit '" + std::string(suffix) + "'", loc);
}

std::string format_quantity(const Quantity& q) {
    struct Canon {
        Dimension dim;
        const char* suffix;
        int pow10;
    };
    static constexpr std::array<Canon, 5> kCanon{{
        {Dimension::pressure, "kPa", 3},
        {Dimension::length, "mm", -3},
        {Dimension::flow, "ml/s", -6},
        {Dimension::viscosity, "Pa.s", 0},
        {Dimension::resistance, "Pa.s/ml", 6},
    }};
    for (const auto& c : kCanon) {
        if (c.dim != q.dim) continue;
        // scaled display value: si * 10^-pow10, via exponent arithmetic on
        // the shortest representation so the round trip stays exact
        const double scaled = q.si / std::pow(10.0, c.pow10);
        std::string text = shortest_repr(scaled);
        if (round_trips(q.si, c.pow10, text)) return text + c.suffix;
        break;  // fall back to bare SI
    }
    return shortest_repr(q.si);
}

}  // namespace fluidlogic
