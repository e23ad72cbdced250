#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fluidlogic/fluidlogic.hpp"

namespace py = pybind11;
using namespace fluidlogic;

namespace {

py::dict outcome_to_dict(const CircuitGraph& g, const SolveOutcome& out) {
    py::dict d;
    if (const auto* st = std::get_if<SteadyState>(&out)) {
        d["steady"] = true;
        py::dict probes;
        for (const auto& name : g.probe_order)
            probes[py::str(name)] = st->pressures_by_index[g.probes.at(name)];
        d["probes"] = probes;
        d["pressures"] = st->node_pressures;
        d["flows"] = st->branch_flows;
        d["states"] = st->valve_states;
        d["residual"] = st->residual;
    } else {
        const auto& no = std::get<NoSteadyState>(out);
        d["steady"] = false;
        d["diagnosis"] = no.diagnosis;
        d["cycle"] = no.cycle;
    }
    return d;
}

py::dict truth_to_dict(const TruthTable& t) {
    py::dict d;
    d["inputs"] = t.inputs;
    d["outputs"] = t.outputs;
    py::list rows;
    for (const auto& r : t.rows) {
        py::dict jr;
        jr["bits"] = r.bits_string();
        jr["failed"] = r.failed;
        if (r.failed) {
            jr["diagnosis"] = r.failure;
        } else {
            std::string lv;
            for (auto l : r.levels) lv += level_char(l);
            jr["levels"] = lv;
            jr["pressures"] = r.pressures;
        }
        rows.append(jr);
    }
    d["rows"] = rows;
    return d;
}

HalfAdderVariant variant_from(const std::string& v) {
    if (v == "I" || v == "1") return HalfAdderVariant::type1;
    if (v == "II" || v == "2") return HalfAdderVariant::type2;
    throw std::invalid_argument("variant must be 'I' or 'II'");
}

}  // namespace

PYBIND11_MODULE(_fluidlogic, m) {
    m.doc() = "steady-state simulator and logic toolkit for hydraulic fluidic circuits";

    py::register_exception<ParseError>(m, "NetlistParseError", PyExc_ValueError);
    py::register_exception<ValidateError>(m, "ValidateError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    // component models
    py::class_<FluidProps>(m, "FluidProps")
        .def(py::init<>())
        .def_readwrite("mu", &FluidProps::mu)
        .def_readwrite("rho", &FluidProps::rho);

    py::class_<AndValveGeometry>(m, "AndValveGeometry")
        .def(py::init<>())
        .def_readwrite("d0", &AndValveGeometry::d0)
        .def_readwrite("d1", &AndValveGeometry::d1)
        .def_readwrite("d2", &AndValveGeometry::d2)
        .def_readwrite("h1", &AndValveGeometry::h1)
        .def_readwrite("cq", &AndValveGeometry::cq)
        .def_readwrite("alpha", &AndValveGeometry::alpha)
        .def_readwrite("beta", &AndValveGeometry::beta)
        .def_readwrite("area_factor", &AndValveGeometry::area_factor)
        .def("annulus_area", &AndValveGeometry::annulus_area);

    m.def(
        "hose_resistance",
        [](double length, double diameter, double mu) {
            FluidProps f;
            f.mu = mu;
            return hose_resistance(HoseParams{length, diameter}, f);
        },
        py::arg("length"), py::arg("diameter"), py::arg("mu") = FluidProps{}.mu);
    m.def(
        "plate_gap_resistance",
        [](const AndValveGeometry& g) { return plate_gap_resistance(g); },
        py::arg("geometry") = AndValveGeometry{});
    m.def(
        "orifice_flow", [](double dp, const AndValveGeometry& g) { return orifice_flow(dp, g); },
        py::arg("dp"), py::arg("geometry") = AndValveGeometry{});
    m.def(
        "orifice_resistance",
        [](double dp, const AndValveGeometry& g) { return orifice_resistance(dp, g); },
        py::arg("dp"), py::arg("geometry") = AndValveGeometry{});
    m.def(
        "membrane_displacement",
        [](double load, double compliance) {
            MembraneModel mm;
            mm.compliance = compliance;
            return membrane_displacement(load, mm);
        },
        py::arg("load"), py::arg("compliance") = MembraneModel{}.compliance);
    m.def(
        "not_valve_conductance_factor",
        [](double p_ctrl) { return not_valve_conductance_factor(p_ctrl, NotValveParams{}); },
        py::arg("p_ctrl"));
    m.def(
        "and_valve_open",
        [](double p_ctrl, double p_in, const AndValveGeometry& g) {
            return and_valve_state(p_ctrl, p_in, g) == AndState::open;
        },
        py::arg("p_ctrl"), py::arg("p_in"), py::arg("geometry") = AndValveGeometry{});
    m.def(
        "check_valve_flow", [](double dp) { return check_valve_flow(dp, CheckValveParams{}); },
        py::arg("dp"));

    // netlists
    m.def("parse_netlist_text",
          [](const std::string& text) { return serialize(parse_netlist(text)); },
          "parse netlist text and return its canonical serialization");
    m.def("validate_netlist", [](const std::string& text) {
        const CircuitGraph g = validate(parse_netlist(text));
        py::dict d;
        d["nodes"] = g.node_count();
        d["branches"] = g.branch_count();
        d["probes"] = g.probe_order;
        d["inputs"] = g.input_order;
        return d;
    });

    // solving
    m.def(
        "solve",
        [](const std::string& text, const std::map<std::string, double>& set) {
            const CircuitGraph g = validate(parse_netlist(text));
            return outcome_to_dict(g, solve_steady(g, set, {}));
        },
        py::arg("netlist"), py::arg("set") = std::map<std::string, double>{});
    m.def(
        "sweep",
        [](const std::string& text, const std::string& var, double from, double to, int steps) {
            const Netlist nl = parse_netlist(text);
            const CircuitGraph g = validate(nl);
            const SweepResult res = sweep(nl, var, from, to, steps);
            py::list points;
            for (const auto& pt : res.points) {
                py::dict d = outcome_to_dict(g, pt.outcome);
                d["value"] = pt.value;
                if (const auto* st = std::get_if<SteadyState>(&pt.outcome)) {
                    py::dict flows;
                    for (const auto& name : g.probe_order)
                        flows[py::str(name)] =
                            discharge_flow(g, *st, g.probes.at(name), {});
                    d["discharge"] = flows;
                }
                points.append(d);
            }
            return points;
        },
        py::arg("netlist"), py::arg("var"), py::arg("from_value"), py::arg("to_value"),
        py::arg("steps"));

    // logic
    m.def(
        "quantize",
        [](double pressure) {
            return std::string(1, level_char(quantize(pressure, LogicThresholds{})));
        },
        py::arg("pressure"));
    m.def(
        "truth_table",
        [](const std::string& text, double high) {
            LogicThresholds t;
            if (high > 0) t.p_hi_in = high;
            const CircuitGraph g = validate(parse_netlist(text));
            return truth_to_dict(enumerate_truth_table(g, t, {}));
        },
        py::arg("netlist"), py::arg("high") = 0.0);
    m.def(
        "compile_expression",
        [](const std::string& expr, bool alt_and) {
            return serialize(compile_to_netlist(parse_bool_expr(expr), {}, alt_and));
        },
        py::arg("expr"), py::arg("alt_and") = false);
    m.def(
        "gate_template",
        [](const std::string& which) {
            GateLibrary lib;
            if (which == "or") return serialize(lib.or_gate());
            if (which == "not") return serialize(lib.not_bench());
            if (which == "and") return serialize(lib.and_bench());
            if (which == "xor") return serialize(lib.xor_gate());
            if (which == "and_alt") return serialize(lib.and_alt_gate());
            if (which == "half_adder_1") return serialize(lib.half_adder(HalfAdderVariant::type1));
            if (which == "half_adder_2") return serialize(lib.half_adder(HalfAdderVariant::type2));
            if (which == "oscillator") return serialize(lib.cross_coupled_loop());
            throw std::invalid_argument("unknown template '" + which + "'");
        },
        py::arg("name"));
    m.def(
        "verify_table",
        [](const std::string& netlist_text, const std::string& table_text) {
            const CircuitGraph g = validate(parse_netlist(netlist_text));
            const VerifyReport r = verify(g, parse_truth_table(table_text));
            py::dict d;
            d["pass"] = r.pass;
            d["dimension_ok"] = r.dimension_ok;
            d["message"] = r.message;
            py::list mm;
            for (const auto& x : r.mismatches) {
                py::dict jm;
                jm["row"] = x.row;
                jm["output"] = x.output;
                jm["expected"] = x.expected;
                jm["got"] = x.got;
                jm["pressure"] = x.pressure;
                mm.append(jm);
            }
            d["mismatches"] = mm;
            return d;
        },
        py::arg("netlist"), py::arg("table"));

    // actuator
    py::class_<BendState>(m, "BendState")
        .def_readonly("azimuth_deg", &BendState::azimuth_deg)
        .def_readonly("curvature", &BendState::curvature)
        .def_readonly("dominant", &BendState::dominant);
    m.def(
        "bend_from_pressures",
        [](const std::array<double, 3>& p) { return bend_from_pressures(p, TentacleParams{}); },
        py::arg("chamber_pressures"));
    m.def(
        "actuate",
        [](const std::string& variant, int in1, int in2) {
            const ActuateResult r = actuate_demo(variant_from(variant), in1, in2);
            py::dict d;
            d["steady"] = is_steady(r.outcome);
            if (is_steady(r.outcome)) {
                d["chambers"] = r.chamber_pressures;
                py::dict b;
                b["azimuth_deg"] = r.bend.azimuth_deg;
                b["curvature"] = r.bend.curvature;
                b["dominant"] = r.bend.dominant;
                d["bend"] = b;
            }
            return d;
        },
        py::arg("variant"), py::arg("in1"), py::arg("in2"));
}
