#include "fluidlogic/actuator.hpp"

#include <cmath>
#include <numbers>

namespace fluidlogic {

BendState bend_from_pressures(const std::array<double, 3>& chamber_pa, const TentacleParams& t) {
    BendState b;
    double vx = 0.0, vy = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double drive = std::max(chamber_pa[i] - t.p_act, 0.0);
        const double rad = t.azimuth_deg[i] * std::numbers::pi / 180.0;
        vx += drive * std::cos(rad);
        vy += drive * std::sin(rad);
    }
    const double mag = std::hypot(vx, vy);
    b.curvature = t.curvature_gain * mag;
    if (b.curvature > 0.0) {
        double az = std::atan2(vy, vx) * 180.0 / std::numbers::pi;
        if (az < 0) az += 360.0;
        b.azimuth_deg = az;
    }
    int best = -1;
    for (int i = 0; i < 3; ++i) {
        if (chamber_pa[i] <= t.p_act) continue;
        if (best == -1 || chamber_pa[i] > chamber_pa[best]) best = i;
    }
    if (best != -1) {
        for (int i = 0; i < 3; ++i)
            if (i != best && chamber_pa[i] == chamber_pa[best]) best = -1;  // tie: no dominant
    }
    b.dominant = best;
    return b;
}

namespace {

// Shares the template plumbing defaults with the gate library but ends in
// sealed chambers instead of discharge nozzles.
Netlist variant1(const GateLibrary& lib) {
    Netlist nl;
    nl.title = "tentacle driver, half adder type I with the OR stage removed";
    auto len = [](double m) { return Quantity{m, Dimension::length}; };
    auto pres = [](double pa) { return Quantity{pa, Dimension::pressure}; };
    auto hose = [&](const std::string& n, const std::string& a, const std::string& b) {
        nl.components.push_back({ComponentKind::hose,
                                 n,
                                 {a, b},
                                 {{"length", len(lib.hose_length)},
                                  {"diameter", len(lib.hose_diameter)}},
                                 {}});
    };
    nl.components.push_back(
        {ComponentKind::source, "in1", {"s1"}, {{"pressure", pres(lib.supply)}}, {}});
    nl.components.push_back(
        {ComponentKind::source, "in2", {"s2"}, {{"pressure", pres(lib.supply)}}, {}});
    nl.inputs = {"in1", "in2"};
    hose("h1", "s1", "a");
    hose("h2", "s2", "b");
    hose("h3", "a", "na");
    nl.components.push_back({ComponentKind::notgate, "nA", {"na", "oA", "b"}, {}, {}});
    hose("h4", "b", "nb");
    nl.components.push_back({ComponentKind::notgate, "nB", {"nb", "oB", "a"}, {}, {}});
    hose("h5", "oA", "chL");
    hose("h6", "oB", "chR");
    hose("h7", "a", "ain");
    nl.components.push_back({ComponentKind::andgate, "gA", {"ain", "ao", "b"}, {}, {}});
    hose("h8", "ao", "chM");
    nl.probes = {{"L", "chL", {}}, {"R", "chR", {}}, {"M", "chM", {}}};
    nl.components.push_back({ComponentKind::tank, "amb", {"sink"}, {}, {}});
    return nl;
}

Netlist variant2(const GateLibrary& lib) {
    // full type II with conduits tapped before the check valves; the carry
    // outlet fills the middle chamber and the auxiliary supply is always on
    Netlist nl = lib.half_adder(HalfAdderVariant::type2);
    nl.title = "tentacle driver, half adder type II with chamber conduits";
    nl.aux_sources.clear();
    auto len = [](double m) { return Quantity{m, Dimension::length}; };
    auto hose = [&](const std::string& n, const std::string& a, const std::string& b) {
        nl.components.push_back({ComponentKind::hose,
                                 n,
                                 {a, b},
                                 {{"length", len(lib.hose_length)},
                                  {"diameter", len(lib.hose_diameter)}},
                                 {}});
    };
    hose("hL", "ja", "chL");
    hose("hR", "jb", "chR");
    // the middle chamber replaces the carry discharge
    for (auto it = nl.components.begin(); it != nl.components.end(); ++it) {
        if (it->name == "loadC") {
            nl.components.erase(it);
            break;
        }
    }
    nl.probes = {{"L", "chL", {}}, {"R", "chR", {}}, {"M", "carry", {}}};
    return nl;
}

}  // namespace

Netlist actuator_netlist(HalfAdderVariant variant, const GateLibrary& lib) {
    return variant == HalfAdderVariant::type1 ? variant1(lib) : variant2(lib);
}

ActuateResult actuate_demo(HalfAdderVariant variant, int in1, int in2, const SolveConfig& cfg,
                           const TentacleParams& t, const GateLibrary& lib) {
    const Netlist nl = actuator_netlist(variant, lib);
    const CircuitGraph g = validate(nl);
    std::map<std::string, double> drives{{"in1", in1 ? lib.supply : 0.0},
                                         {"in2", in2 ? lib.supply : 0.0}};
    ActuateResult res;
    res.outcome = solve_steady(g, drives, cfg);
    if (const auto* st = std::get_if<SteadyState>(&res.outcome)) {
        const char* names[3] = {"L", "R", "M"};
        for (int i = 0; i < 3; ++i)
            res.chamber_pressures[i] = st->pressures_by_index[g.probes.at(names[i])];
        res.bend = bend_from_pressures(res.chamber_pressures, t);
    }
    return res;
}

}  // namespace fluidlogic
