#pragma once

// Independent brute-force reference for the steady-state solver: enumerates
// every binary valve-state assignment, solves each frozen network with a
// Gauss-Jordan elimination plus secant fixed-point iteration on the orifice
// elements (no Newton, no shared code with the production solve path), and
// keeps the self-consistent ones.

#include <optional>
#include <vector>

#include "fluidlogic/solver.hpp"

namespace fluidlogic::oracle {

struct OracleSolution {
    std::vector<uint8_t> states;   // per switching branch, 0/1
    std::vector<double> pressures; // per node
};

struct OracleResult {
    std::vector<int> switching;               // branch indices with binary states
    std::vector<OracleSolution> consistent;   // all self-consistent assignments
    bool binary_representable = true;         // false if a NOT landed mid-ramp
};

OracleResult enumerate_assignments(const CircuitGraph& g,
                                   const std::map<std::string, double>& overrides,
                                   const SolveConfig& cfg = {});

// True if the production outcome matches the oracle: a returned steady state
// appears in the consistent set with matching pressures, and NoSteadyState
// implies the consistent set is empty.
bool matches(const CircuitGraph& g, const OracleResult& oracle, const SolveOutcome& outcome,
             double pressure_rtol = 1e-6);

}  // namespace fluidlogic::oracle
