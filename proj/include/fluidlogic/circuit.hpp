#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fluidlogic/components.hpp"
#include "fluidlogic/netlist.hpp"

namespace fluidlogic {

struct ValidateError : std::runtime_error {
    ValidateError(const std::string& msg, SourceLoc where = {})
        : std::runtime_error(ParseError::format(msg, where)), loc(where) {}
    SourceLoc loc;
};

// Branch elements of the solver-ready graph. Node indices refer to merged
// hydraulic nodes (tee junctions collapse their terminals into one node).
struct HoseElem {
    double resistance;
};
struct CheckElem {
    CheckValveParams params;
};
struct NotElem {
    NotValveParams params;
    int ctrl_node;
};
struct AndElem {
    AndValveGeometry geom;
    double gap_resistance;
    double cqa_eff;  // cq * annulus area * area_factor
    int ctrl_node;
    int mid_node;  // internal node between plate gap and orifice
};
struct OrificeElem {
    double cqa;  // cq * area
};

struct Branch {
    std::string name;
    int n1 = -1;
    int n2 = -1;  // positive flow direction n1 -> n2 (in -> out for gates)
    std::variant<HoseElem, CheckElem, NotElem, AndElem, OrificeElem> elem;
};

struct SourceRef {
    std::string name;
    int node = -1;
    double pressure = 0.0;  // Pa gauge
    bool is_input = false;
    bool is_aux = false;
};

struct CircuitGraph {
    // node 0.. are merged hydraulic nodes; tanks are fixed at 0 Pa gauge
    std::vector<std::string> node_names;  // representative name per node
    std::vector<bool> node_fixed;         // tank or source-held
    std::vector<Branch> branches;
    std::vector<SourceRef> sources;
    std::vector<int> tank_nodes;
    std::map<std::string, int> probes;          // probe name -> node
    std::vector<std::string> probe_order;       // declaration order
    std::vector<std::string> input_order;       // declared logic inputs
    FluidProps fluid;

    int node_count() const { return static_cast<int>(node_names.size()); }
    int branch_count() const { return static_cast<int>(branches.size()); }
    int node_index(const std::string& name) const;  // -1 if unknown
    const SourceRef* find_source(const std::string& name) const;
};

// Builds the solver-ready graph: merges tee terminals, assigns node indices,
// instantiates element models with defaults filled, and checks that an
// ambient reference exists, every node is reachable from a source or tank,
// no node carries two sources, and parameters are physical.
CircuitGraph validate(const Netlist& netlist, const FluidProps& fluid = {});

}  // namespace fluidlogic
