#pragma once

#include <string>

#include <json.hpp>

namespace fluidlogic {

// Exit-code contract of the command line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitDivergence = 2,
    kExitNoSteadyState = 3,
    kExitMismatch = 4,
};

// One run's machine-readable result. The table rendering is generated from
// the same JSON document, so both carry identical data.
struct RunReport {
    nlohmann::json data;
    int exit_code = kExitOk;

    RunReport() { data["schema"] = 1; }

    std::string to_json() const;
    std::string to_table() const;
};

// Locale-independent numeric formatting with 9 significant digits.
std::string format_number(double v);

// RFC 4180 field escaping (quotes fields containing comma, quote or newline).
std::string csv_escape(const std::string& field);

}  // namespace fluidlogic
