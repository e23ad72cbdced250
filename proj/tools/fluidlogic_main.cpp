#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fluidlogic/fluidlogic.hpp"
#include "fluidlogic/report.hpp"

namespace fl = fluidlogic;
using nlohmann::json;

namespace {

struct GlobalConfig {
    fl::FluidProps fluid;
    fl::LogicThresholds thresholds;
    fl::SolveConfig solve;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// key=value lines, same quantity grammar as netlist params
void load_config(const std::string& path, GlobalConfig& cfg) {
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw fl::ParseError("expected key=value in config", {lineno, 1});
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        const fl::SourceLoc loc{lineno, 1};
        if (key == "mu")
            cfg.fluid.mu = fl::parse_quantity(val, fl::Dimension::viscosity, loc).si;
        else if (key == "rho")
            cfg.fluid.rho = fl::parse_quantity(val, fl::Dimension::dimensionless, loc).si;
        else if (key == "theta_lo")
            cfg.thresholds.theta_lo = fl::parse_quantity(val, fl::Dimension::pressure, loc).si;
        else if (key == "theta_hi")
            cfg.thresholds.theta_hi = fl::parse_quantity(val, fl::Dimension::pressure, loc).si;
        else if (key == "p_hi_in")
            cfg.thresholds.p_hi_in = fl::parse_quantity(val, fl::Dimension::pressure, loc).si;
        else if (key == "tolerance")
            cfg.solve.tolerance = fl::parse_quantity(val, fl::Dimension::dimensionless, loc).si;
        else if (key == "g_min")
            cfg.solve.g_min = fl::parse_quantity(val, fl::Dimension::dimensionless, loc).si;
        else if (key == "g_node")
            cfg.solve.g_node = fl::parse_quantity(val, fl::Dimension::dimensionless, loc).si;
        else
            throw fl::ParseError("unknown config key '" + key + "'", loc);
    }
}

void emit(const fl::RunReport& rep, bool as_json) {
    std::cout << (as_json ? rep.to_json() : rep.to_table());
}

json steady_to_json(const fl::CircuitGraph& g, const fl::SteadyState& st) {
    json j;
    j["steady"] = true;
    j["residual"] = st.residual;
    json probes = json::object();
    for (const auto& name : g.probe_order)
        probes[name] = st.pressures_by_index[g.probes.at(name)];
    j["probes"] = probes;
    j["pressures"] = st.node_pressures;
    j["flows"] = st.branch_flows;
    j["states"] = st.valve_states;
    return j;
}

json cycle_to_json(const fl::NoSteadyState& no) {
    json j;
    j["steady"] = false;
    j["diagnosis"] = no.diagnosis;
    j["cycle"] = json::array();
    for (const auto& a : no.cycle) j["cycle"].push_back(a);
    return j;
}

std::map<std::string, double> parse_sets(const fl::CircuitGraph& g,
                                         const std::vector<std::string>& sets) {
    std::map<std::string, double> overrides;
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--set expects name=pressure, got '" + s + "'");
        const std::string name = s.substr(0, eq);
        if (!g.find_source(name))
            throw std::runtime_error("--set: unknown source '" + name + "'");
        overrides[name] =
            fl::parse_quantity(s.substr(eq + 1), fl::Dimension::pressure).si;
    }
    return overrides;
}

int cmd_sim(const std::string& path, const std::vector<std::string>& sets, bool as_json,
            const GlobalConfig& cfg) {
    const fl::Netlist nl = fl::parse_netlist(read_file(path));
    const fl::CircuitGraph g = fl::validate(nl, cfg.fluid);
    const auto overrides = parse_sets(g, sets);

    fl::RunReport rep;
    rep.data["command"] = "sim";
    rep.data["netlist"] = path;
    try {
        fl::SolveOutcome out = fl::solve_steady(g, overrides, cfg.solve);
        if (const auto* st = std::get_if<fl::SteadyState>(&out)) {
            rep.data.update(steady_to_json(g, *st));
            rep.exit_code = fl::kExitOk;
        } else {
            rep.data.update(cycle_to_json(std::get<fl::NoSteadyState>(out)));
            rep.exit_code = fl::kExitNoSteadyState;
        }
    } catch (const fl::SolverError& e) {
        rep.data["steady"] = false;
        rep.data["error"] = e.what();
        rep.data["last_residual"] = e.last_residual;
        rep.exit_code = fl::kExitDivergence;
    }
    emit(rep, as_json);
    return rep.exit_code;
}

int cmd_sweep(const std::string& path, const std::string& var, const std::string& from,
              const std::string& to, int steps, const std::string& csv_path, bool as_json,
              const GlobalConfig& cfg) {
    if (steps < 2) throw std::runtime_error("--steps must be at least 2");
    const fl::Netlist nl = fl::parse_netlist(read_file(path));
    const fl::CircuitGraph base = fl::validate(nl, cfg.fluid);

    const double v0 = fl::parse_any_quantity(from).si;
    const double v1 = fl::parse_any_quantity(to).si;
    fl::SweepResult res = fl::sweep(nl, var, v0, v1, steps, cfg.solve, cfg.fluid);

    fl::RunReport rep;
    rep.data["command"] = "sweep";
    rep.data["netlist"] = path;
    rep.data["param"] = res.param;
    json points = json::array();
    std::ostringstream csv;
    csv << "value";
    for (const auto& p : base.probe_order) csv << "," << p << "_Pa";
    for (const auto& p : base.probe_order) csv << "," << p << "_flow";
    csv << "\r\n";
    int failures = 0;
    for (const auto& pt : res.points) {
        json jp;
        jp["value"] = pt.value;
        csv << fl::format_number(pt.value);
        if (const auto* st = std::get_if<fl::SteadyState>(&pt.outcome)) {
            jp["steady"] = true;
            json probes = json::object(), flows = json::object();
            for (const auto& name : base.probe_order) {
                const int node = base.probes.at(name);
                probes[name] = st->pressures_by_index[node];
                flows[name] = fl::discharge_flow(base, *st, node, cfg.solve);
            }
            jp["probes"] = probes;
            jp["discharge"] = flows;
            for (const auto& name : base.probe_order)
                csv << "," << fl::format_number(probes[name].get<double>());
            for (const auto& name : base.probe_order)
                csv << "," << fl::format_number(flows[name].get<double>());
        } else {
            ++failures;
            jp["steady"] = false;
            jp["diagnosis"] = std::get<fl::NoSteadyState>(pt.outcome).diagnosis;
            for (size_t i = 0; i < 2 * base.probe_order.size(); ++i) csv << ",";
        }
        csv << "\r\n";
        points.push_back(std::move(jp));
    }
    rep.data["points"] = points;
    if (failures)
        rep.data["warnings"] = {std::to_string(failures) + " point(s) had no steady state"};

    if (!csv_path.empty()) {
        if (csv_path == "-") {
            std::cout << csv.str();
        } else {
            std::ofstream out(csv_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write '" + csv_path + "'");
            out << csv.str();
        }
        return fl::kExitOk;
    }
    emit(rep, as_json);
    return fl::kExitOk;
}

int cmd_truth(const std::string& path, const std::string& high, bool as_json, bool as_csv,
              GlobalConfig cfg) {
    const fl::Netlist nl = fl::parse_netlist(read_file(path));
    const fl::CircuitGraph g = fl::validate(nl, cfg.fluid);
    if (!high.empty())
        cfg.thresholds.p_hi_in = fl::parse_quantity(high, fl::Dimension::pressure).si;

    fl::TruthTable t = fl::enumerate_truth_table(g, cfg.thresholds, cfg.solve);
    int failures = 0, xcount = 0;
    for (const auto& r : t.rows) {
        failures += r.failed ? 1 : 0;
        for (auto l : r.levels) xcount += (!r.failed && l == fl::Level::x) ? 1 : 0;
    }

    if (as_csv) {
        std::cout << fl::format_truth_table_csv(t);
    } else if (as_json) {
        fl::RunReport rep;
        rep.data["command"] = "truth";
        rep.data["netlist"] = path;
        rep.data["inputs"] = t.inputs;
        rep.data["outputs"] = t.outputs;
        json rows = json::array();
        for (const auto& r : t.rows) {
            json jr;
            jr["bits"] = r.bits_string();
            if (r.failed) {
                jr["failed"] = true;
                jr["diagnosis"] = r.failure;
            } else {
                std::string lv;
                for (auto l : r.levels) lv += fl::level_char(l);
                jr["levels"] = lv;
                jr["pressures"] = r.pressures;
            }
            rows.push_back(std::move(jr));
        }
        rep.data["rows"] = rows;
        json warnings = json::array();
        if (xcount) warnings.push_back(std::to_string(xcount) + " indeterminate (X) level(s)");
        if (failures) warnings.push_back(std::to_string(failures) + " row(s) without steady state");
        rep.data["warnings"] = warnings;
        std::cout << rep.to_json();
    } else {
        std::cout << fl::format_truth_table(t);
        if (xcount) std::cerr << "warning: " << xcount << " indeterminate (X) level(s)\n";
    }
    return failures ? fl::kExitNoSteadyState : fl::kExitOk;
}

int cmd_compile(const std::string& expr, const std::string& out_path, bool alt_and) {
    const fl::BoolExprPtr e = fl::parse_bool_expr(expr);
    const fl::Netlist nl = fl::compile_to_netlist(e, {}, alt_and);
    const std::string text = fl::serialize(nl);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << text;
    }
    return fl::kExitOk;
}

int cmd_check(const std::string& path, const std::string& table_path, bool as_json,
              const GlobalConfig& cfg) {
    const fl::Netlist nl = fl::parse_netlist(read_file(path));
    const fl::CircuitGraph g = fl::validate(nl, cfg.fluid);
    const fl::TruthTable expected = fl::parse_truth_table(read_file(table_path));
    const fl::VerifyReport vr = fl::verify(g, expected, cfg.thresholds, cfg.solve);

    fl::RunReport rep;
    rep.data["command"] = "check";
    rep.data["netlist"] = path;
    rep.data["table"] = table_path;
    rep.data["pass"] = vr.pass;
    rep.data["message"] = vr.message;
    json mism = json::array();
    for (const auto& m : vr.mismatches) {
        json jm;
        jm["row"] = m.row;
        jm["output"] = m.output;
        jm["expected"] = m.expected;
        jm["got"] = m.got;
        jm["pressure"] = m.pressure;
        mism.push_back(std::move(jm));
    }
    rep.data["mismatches"] = mism;
    rep.exit_code = vr.pass ? fl::kExitOk : fl::kExitMismatch;
    emit(rep, as_json);
    return rep.exit_code;
}

int cmd_actuate(const std::string& variant, int in1, int in2, bool as_json,
                const GlobalConfig& cfg) {
    const auto v = variant == "II" ? fl::HalfAdderVariant::type2 : fl::HalfAdderVariant::type1;
    fl::ActuateResult res = fl::actuate_demo(v, in1, in2, cfg.solve);

    fl::RunReport rep;
    rep.data["command"] = "actuate";
    rep.data["half_adder"] = variant;
    rep.data["in1"] = in1;
    rep.data["in2"] = in2;
    if (std::holds_alternative<fl::SteadyState>(res.outcome)) {
        rep.data["chambers"] = {{"L", res.chamber_pressures[0]},
                                {"R", res.chamber_pressures[1]},
                                {"M", res.chamber_pressures[2]}};
        rep.data["bend"] = {{"azimuth_deg", res.bend.azimuth_deg},
                            {"curvature", res.bend.curvature},
                            {"dominant",
                             res.bend.dominant < 0
                                 ? "none"
                                 : std::string(1, "LRM"[res.bend.dominant])}};
        rep.exit_code = fl::kExitOk;
    } else {
        rep.data.update(cycle_to_json(std::get<fl::NoSteadyState>(res.outcome)));
        rep.exit_code = fl::kExitNoSteadyState;
    }
    emit(rep, as_json);
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state simulator and logic toolkit for hydraulic fluidic circuits"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "config file (default: $FLUIDLOGIC_CONFIG)");

    std::string netlist, var, from, to, csv_path, table_path, expr, out_path, high, variant = "I";
    std::vector<std::string> sets;
    int steps = 0, in1 = 0, in2 = 0;
    bool as_json = false, as_table = false, as_csv = false, alt_and = false;

    auto* sim = app.add_subcommand("sim", "solve one steady state and print probe pressures");
    sim->add_option("netlist", netlist)->required();
    sim->add_option("--set", sets, "override a source pressure, name=value");
    sim->add_flag("--json", as_json);
    sim->add_flag("--table", as_table);

    auto* swp = app.add_subcommand("sweep", "quasi-static parameter sweep");
    swp->add_option("netlist", netlist)->required();
    swp->add_option("--var", var, "source name or component.param")->required();
    swp->add_option("--from", from)->required();
    swp->add_option("--to", to)->required();
    swp->add_option("--steps", steps)->required();
    swp->add_option("--csv", csv_path, "write CSV to path ('-' for stdout)");
    swp->add_flag("--json", as_json);

    auto* tru = app.add_subcommand("truth", "enumerate the truth table over declared inputs");
    tru->add_option("netlist", netlist)->required();
    tru->add_option("--high", high, "logic-1 drive pressure");
    tru->add_flag("--json", as_json);
    tru->add_flag("--csv", as_csv);

    auto* cmp = app.add_subcommand("compile", "compile a boolean expression to a netlist");
    cmp->add_option("expr", expr)->required();
    cmp->add_option("-o,--out", out_path);
    cmp->add_flag("--alt-and", alt_and, "build AND from the XOR+NOT construction");

    auto* chk = app.add_subcommand("check", "verify a netlist against an expected truth table");
    chk->add_option("netlist", netlist)->required();
    chk->add_option("--table", table_path)->required();
    chk->add_flag("--json", as_json);

    auto* act = app.add_subcommand("actuate", "drive the 3-chamber tentacle demo");
    act->add_option("--half-adder", variant)->check(CLI::IsMember({"I", "II"}));
    act->add_option("--in1", in1)->check(CLI::Range(0, 1))->required();
    act->add_option("--in2", in2)->check(CLI::Range(0, 1))->required();
    act->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? fluidlogic::kExitInputError : 0;
    }

    try {
        GlobalConfig cfg;
        if (config_path.empty())
            if (const char* env = std::getenv("FLUIDLOGIC_CONFIG")) config_path = env;
        if (!config_path.empty()) load_config(config_path, cfg);

        if (sim->parsed()) return cmd_sim(netlist, sets, as_json, cfg);
        if (swp->parsed()) return cmd_sweep(netlist, var, from, to, steps, csv_path, as_json, cfg);
        if (tru->parsed()) return cmd_truth(netlist, high, as_json, as_csv, cfg);
        if (cmp->parsed()) return cmd_compile(expr, out_path, alt_and);
        if (chk->parsed()) return cmd_check(netlist, table_path, as_json, cfg);
        if (act->parsed()) return cmd_actuate(variant, in1, in2, as_json, cfg);
    } catch (const fluidlogic::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fluidlogic::kExitDivergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fluidlogic::kExitInputError;
    }
    return fluidlogic::kExitInputError;
}
