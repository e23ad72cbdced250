#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fluidlogic/solver.hpp"

namespace fluidlogic {

struct LogicThresholds {
    double theta_hi = 1.0e4;  // Pa, logic 1 at or above
    double theta_lo = 2.0e3;  // Pa, logic 0 at or below
    double p_hi_in = 8.0e4;   // Pa, drive applied to a logic-1 input
};

enum class Level : uint8_t { zero, one, x };

char level_char(Level l);

// 1 if >= theta_hi, 0 if <= theta_lo, X in the dead zone.
Level quantize(double pressure, const LogicThresholds& t);

struct TruthRow {
    std::vector<int> input_bits;       // per declared input, 0/1
    std::vector<Level> levels;         // per output
    std::vector<double> pressures;     // Pa, per output
    bool failed = false;               // row-level NoSteadyState
    std::string failure;

    std::string bits_string() const;
};

struct TruthTable {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<TruthRow> rows;
};

// Solves all 2^n input assignments. Logic 1 drives p_hi_in, logic 0 drives
// 0 Pa gauge (the source is held at ambient, not removed). Sources marked
// `aux` are driven at p_hi_in in rows where at least one input is high and
// held at 0 in the all-zero row, mirroring how the bench operator runs the
// auxiliary supply. Other sources keep their declared pressures.
TruthTable enumerate_truth_table(const CircuitGraph& circuit, const LogicThresholds& t = {},
                                 const SolveConfig& cfg = {});

// Text format: `inputs: a b` / `outputs: Sum Carry` headers, then one row per
// line, e.g. `10 -> 1 0`. Emitted row order counts the first input fastest.
std::string format_truth_table(const TruthTable& t);
std::string format_truth_table_csv(const TruthTable& t);  // adds pressure columns
TruthTable parse_truth_table(std::string_view text);

// ---------------------------------------------------------------------------
// Boolean expressions

struct BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

struct BoolExpr {
    enum class Op { var, bnot, band, bor, bxor };
    Op op{};
    std::string var;
    BoolExprPtr lhs;
    BoolExprPtr rhs;
};

// Grammar: identifiers, !/NOT, &/AND, ^/XOR, |/OR, parentheses.
// Precedence NOT > AND > XOR > OR.
BoolExprPtr parse_bool_expr(std::string_view text);

// Variables in first-occurrence order.
std::vector<std::string> collect_vars(const BoolExprPtr& e);

bool eval_bool(const BoolExprPtr& e, const std::vector<std::string>& vars,
               const std::vector<int>& bits);

// ---------------------------------------------------------------------------
// Gate library

enum class HalfAdderVariant { type1, type2 };

// Parameterized netlist templates for the gate benches and half adders.
// Every bench terminates its outputs in a small discharge nozzle (the
// sensor/outlet fitting of the rig) so logic levels form under real flow.
struct GateLibrary {
    double hose_length = 0.05;      // m, per interconnect segment
    double hose_diameter = 2.5e-3;  // m
    double load_diameter = 0.4e-3;  // m, discharge nozzle bore
    double load_cq = 0.7;
    double supply = 8.0e4;  // Pa, template source pressure

    Netlist or_gate() const;
    Netlist not_bench() const;
    Netlist and_bench() const;
    Netlist xor_gate() const;      // dual NOT + OR
    Netlist and_alt_gate() const;  // XOR structure + NOT with its own source
    Netlist half_adder(HalfAdderVariant v) const;

    // Dual NOT loop with the outputs cross-fed to the controls; has no
    // steady state and is the oscillation-detection fixture.
    Netlist cross_coupled_loop() const;
};

Netlist half_adder_template(HalfAdderVariant v, const GateLibrary& lib = {});

// Structural mapping of an expression onto the gate library. XOR uses the
// dual-NOT construction; AND uses the disc-pole-disc valve, or the XOR+NOT
// construction when alt_and is set. Inputs become `input` sources, the root
// becomes probe "out".
Netlist compile_to_netlist(const BoolExprPtr& e, const GateLibrary& lib = {},
                           bool alt_and = false);

// ---------------------------------------------------------------------------
// Verification

struct VerifyMismatch {
    std::string row;
    std::string output;
    std::string expected;
    std::string got;
    double pressure = 0.0;
};

struct VerifyReport {
    bool pass = false;
    bool dimension_ok = true;
    std::string message;
    std::vector<VerifyMismatch> mismatches;
};

// Row-by-row comparison against an expected table; X levels fail.
VerifyReport verify(const CircuitGraph& circuit, const TruthTable& expected,
                    const LogicThresholds& t = {}, const SolveConfig& cfg = {});

}  // namespace fluidlogic
