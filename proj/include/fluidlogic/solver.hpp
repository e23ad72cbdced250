#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fluidlogic/circuit.hpp"

namespace fluidlogic {

struct SolveConfig {
    int max_newton = 100;
    double tolerance = 1e-12;  // m3/s, absolute node flow imbalance
    int max_state_iters = 64;
    double damping = 1.0;  // initial Newton step scale, halved on residual increase
    double g_min = kGmin;  // leak conductance of closed elements
    // Leak from every free node to ambient. Keeps dead-ended cavities at a
    // defined pressure (same role as a SPICE gmin-to-ground) and is part of
    // the flow balance.
    double g_node = 1e-12;
    // Hysteresis band (Pa) on the pressure-gain valve state update. Leak-level
    // floats otherwise chatter the open/closed rule when control and input
    // both idle near ambient. Far below any logic level.
    double switch_deadband = 500.0;
};

struct SolverError : std::runtime_error {
    SolverError(const std::string& msg, double last_residual_)
        : std::runtime_error(msg), last_residual(last_residual_) {}
    double last_residual = 0.0;
};

// One self-consistent operating point: node pressures, branch flows (signed
// toward the second terminal / gate out), and discrete valve states that
// reproduce themselves when re-evaluated on the solved pressures.
struct SteadyState {
    std::map<std::string, double> node_pressures;   // representative node name -> Pa
    std::map<std::string, double> branch_flows;     // branch name -> m3/s
    std::map<std::string, std::string> valve_states;
    double residual = 0.0;

    // solver internals, kept for re-evaluation and warm starts
    std::vector<double> pressures_by_index;
    std::vector<uint8_t> discrete_states;  // per branch; 255 = not a switching element
    std::vector<double> not_factors;       // per branch; NaN where not a NOT valve
};

// The valve-state iteration revisited an earlier assignment: the topology has
// no steady state and the assignment cycle is the oscillation witness.
struct NoSteadyState {
    std::vector<std::map<std::string, std::string>> cycle;  // first == last
    std::string diagnosis;
};

using SolveOutcome = std::variant<SteadyState, NoSteadyState>;

bool is_steady(const SolveOutcome& o);

// Solves the steady-state flow balance. source_overrides replaces declared
// source pressures by source name (unknown names are errors). Throws
// SolverError on Newton divergence. Each call is self-contained and the
// graph is read-only, so distinct solves may run concurrently.
SolveOutcome solve_steady(const CircuitGraph& circuit,
                          const std::map<std::string, double>& source_overrides,
                          const SolveConfig& cfg = {});

// Max over free nodes of |net branch inflow - node leak| for the given state.
double residual(const CircuitGraph& circuit, const SteadyState& state,
                const SolveConfig& cfg = {});

// Flow leaving the node toward ambient: branches whose far terminal is a tank
// plus the node leak. For a probed bench output this is the discharge flow.
double discharge_flow(const CircuitGraph& circuit, const SteadyState& state, int node,
                      const SolveConfig& cfg = {});

struct SweepPoint {
    double value = 0.0;
    SolveOutcome outcome;
};

struct SweepResult {
    std::string param;
    std::vector<SweepPoint> points;
};

// Quasi-static sweep of "<source>" / "<source>.pressure" / "<component>.<param>".
// Each point is an independent solve but valve states warm-start from the
// previous point. Per-point NoSteadyState is recorded, not fatal.
SweepResult sweep(const Netlist& netlist, const std::string& param_path, double from, double to,
                  int steps, const SolveConfig& cfg = {}, const FluidProps& fluid = {});

}  // namespace fluidlogic
