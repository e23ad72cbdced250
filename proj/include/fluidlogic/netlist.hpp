#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fluidlogic/quantity.hpp"

namespace fluidlogic {

enum class ComponentKind {
    source,
    tank,
    hose,
    check,
    tee,
    notgate,
    andgate,
    orifice,
};

const char* kind_name(ComponentKind k);

struct ComponentDecl {
    ComponentKind kind{};
    std::string name;
    std::vector<std::string> terminals;     // ordered node names
    std::map<std::string, Quantity> params; // recognized keys only
    SourceLoc loc;
};

struct ProbeDecl {
    std::string name;
    std::string node;
    SourceLoc loc;
};

// Declarative circuit description. One declaration per line:
//
//   title <free text>
//   src <name> <node> <pressure>
//   tank <name> <node>
//   hose <name> <n1> <n2> length=<L> diameter=<D>
//   check <name> <n1> <n2> [crack=<P>] [rf=<R>]        (flow n1 -> n2 only)
//   tee <name> <a> <b> <c>
//   orifice <name> <n1> [<n2>] d1=<D> [d0=<D>] [cq=<x>]  (one terminal: discharges to ambient)
//   not <name> in=<n> out=<n> ctrl=<n> [r_open=<R>] [p_lo=<P>] [p_hi=<P>]
//   and <name> in=<n> out=<n> ctrl=<n> [alpha=<x>] [beta=<P>] [d0=<D>] [d1=<D>]
//                                      [d2=<D>] [h1=<L>] [cq=<x>] [aeff=<x>]
//   probe <name> <node>
//   input <srcname>        marks a source as a logic input
//   aux <srcname>          marks a source as auxiliary: driven only in truth-table
//                          rows where at least one logic input is high
//
// '#' starts a comment. Units are suffix style (80kPa, 45cm, 2.5mm, 2.5ml/s);
// bare numbers are SI.
struct Netlist {
    std::optional<std::string> title;
    std::vector<ComponentDecl> components;
    std::vector<ProbeDecl> probes;
    std::vector<std::string> inputs;
    std::vector<std::string> aux_sources;
};

Netlist parse_netlist(std::string_view text);

// Canonical text form; parse(serialize(n)) is structurally equal to n.
std::string serialize(const Netlist& n);

bool structurally_equal(const Netlist& a, const Netlist& b);

}  // namespace fluidlogic
