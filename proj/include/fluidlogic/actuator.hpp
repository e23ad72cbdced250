#pragma once

#include <array>

#include "fluidlogic/logic.hpp"

namespace fluidlogic {

// Constant-curvature tentacle with three chambers at fixed azimuths.
// Index 0 = left, 1 = right, 2 = middle.
struct TentacleParams {
    std::array<double, 3> azimuth_deg{90.0, 210.0, 330.0};
    double curvature_gain = 1e-7;  // 1/(m.Pa)
    double p_act = 5e3;            // Pa, chamber actuation threshold
};

struct BendState {
    double azimuth_deg = 0.0;  // meaningful only when curvature > 0
    double curvature = 0.0;    // 1/m
    int dominant = -1;         // chamber index, or -1 when none
};

// Bend vector = sum of max(P_i - p_act, 0) unit(azimuth_i); curvature is
// curvature_gain times its magnitude. Dominant chamber = unique argmax above
// the threshold.
BendState bend_from_pressures(const std::array<double, 3>& chamber_pa, const TentacleParams& t);

struct ActuateResult {
    SolveOutcome outcome;
    std::array<double, 3> chamber_pressures{0, 0, 0};
    BendState bend;
};

// Builds the tentacle-driving variant of the chosen half adder, solves it for
// the given inputs, and maps the chamber pressures to a bend.
//
// Variant I drops the OR stage: the two NOT outlets feed the left/right
// chambers and the AND outlet feeds the middle one. Variant II taps a conduit
// before each check valve for left/right and routes the carry outlet to the
// middle chamber; its extra supply stays on for every input combination.
ActuateResult actuate_demo(HalfAdderVariant variant, int in1, int in2,
                           const SolveConfig& cfg = {}, const TentacleParams& t = {},
                           const GateLibrary& lib = {});

// The netlist actuate_demo solves (exposed for inspection and tests).
Netlist actuator_netlist(HalfAdderVariant variant, const GateLibrary& lib = {});

}  // namespace fluidlogic
