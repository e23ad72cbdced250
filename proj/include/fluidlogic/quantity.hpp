#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fluidlogic {

// Physical dimension of a parameter value. All stored values are SI
// (Pa, m, m3/s, Pa.s, Pa.s/m3); units exist only at the text boundary.
enum class Dimension {
    pressure,
    length,
    flow,
    viscosity,
    resistance,
    dimensionless,
};

struct SourceLoc {
    int line = 0;
    int column = 0;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, SourceLoc where)
        : std::runtime_error(format(msg, where)), loc(where) {}
    SourceLoc loc;

    static std::string format(const std::string& msg, SourceLoc where);
};

struct Quantity {
    double si = 0.0;
    Dimension dim = Dimension::dimensionless;

    friend bool operator==(const Quantity&, const Quantity&) = default;
};

// Parses "80kPa", "45cm", "2.5ml/s", "419.6Pa.s/ml", ... Bare numbers are SI.
// Power-of-ten unit factors are applied by decimal exponent shifting before
// the string-to-double conversion, so e.g. 419.6 Pa.s/ml becomes exactly the
// double nearest to 4.196e8.
Quantity parse_quantity(std::string_view token, Dimension expected, SourceLoc loc = {});

// Canonical text form: kPa / mm / ml/s / Pa.s / Pa.s/ml where the scaled
// value round-trips exactly; bare SI otherwise.
std::string format_quantity(const Quantity& q);

// Accepts any known unit; the dimension comes from the unit (dimensionless
// for bare numbers). For values whose dimension is established elsewhere.
Quantity parse_any_quantity(std::string_view token, SourceLoc loc = {});

const char* dimension_name(Dimension d);

}  // namespace fluidlogic
