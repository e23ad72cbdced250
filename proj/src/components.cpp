#include "fluidlogic/components.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace fluidlogic {

double AndValveGeometry::annulus_area() const {
    return std::numbers::pi * (d1 * d1 - d0 * d0) / 4.0;
}

double hose_resistance(const HoseParams& p, const FluidProps& fluid) {
    assert(p.length > 0 && p.diameter > 0 && fluid.mu > 0);
    const double d4 = p.diameter * p.diameter * p.diameter * p.diameter;
    return 128.0 * fluid.mu * p.length / (std::numbers::pi * d4);
}

double plate_gap_resistance(const AndValveGeometry& g, const FluidProps& fluid) {
    assert(g.h1 > 0 && g.d2 >= g.d1);
    const double h3 = g.h1 * g.h1 * g.h1;
    return 12.0 * fluid.mu * ((g.d2 - g.d1) / 2.0) /
           (std::numbers::pi * ((g.d1 + g.d2) / 2.0) * h3);
}

double orifice_flow(double dp, const AndValveGeometry& g, const FluidProps& fluid) {
    assert(dp >= 0);
    return g.cq * g.annulus_area() * std::sqrt(2.0 * dp / fluid.rho);
}

double orifice_resistance(double dp, const AndValveGeometry& g, const FluidProps& fluid) {
    assert(dp > 0);
    return std::sqrt(dp * fluid.rho) / (g.cq * g.annulus_area());
}

double membrane_displacement(double load, const MembraneModel& m) {
    assert(load >= 0);
    return m.compliance * load;
}

double not_valve_conductance_factor(double p_ctrl, const NotValveParams& p) {
    if (p_ctrl <= p.p_lo) return 1.0;
    if (p_ctrl >= p.p_hi) return 0.0;
    return (p.p_hi - p_ctrl) / (p.p_hi - p.p_lo);
}

AndState and_valve_state(double p_ctrl, double p_in, const AndValveGeometry& g) {
    return p_ctrl >= g.alpha * p_in + g.beta ? AndState::open : AndState::closed;
}

double check_valve_flow(double dp, const CheckValveParams& p) {
    if (dp <= p.p_crack) return 0.0;
    return (dp - p.p_crack) / p.r_f;
}

}  // namespace fluidlogic
