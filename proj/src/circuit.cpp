#include "fluidlogic/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fluidlogic {

namespace {

// Union-find over node names; tee components alias their terminals.
struct NodeMerge {
    std::map<std::string, int> ids;
    std::vector<int> parent;
    std::vector<std::string> names;

    int intern(const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(parent.size());
        ids.emplace(name, id);
        parent.push_back(id);
        names.push_back(name);
        return id;
    }
    int find(int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

double param_or(const ComponentDecl& c, const char* key, double fallback) {
    auto it = c.params.find(key);
    return it == c.params.end() ? fallback : it->second.si;
}

void require_positive(const ComponentDecl& c, const char* what, double v) {
    if (!(v > 0))
        throw ValidateError(std::string(kind_name(c.kind)) + " '" + c.name + "': " + what +
                                " must be > 0",
                            c.loc);
}

}  // namespace

int CircuitGraph::node_index(const std::string& name) const {
    for (int i = 0; i < node_count(); ++i)
        if (node_names[i] == name) return i;
    return -1;
}

const SourceRef* CircuitGraph::find_source(const std::string& name) const {
    for (const auto& s : sources)
        if (s.name == name) return &s;
    return nullptr;
}

CircuitGraph validate(const Netlist& netlist, const FluidProps& fluid) {
    NodeMerge merge;

    // First pass: intern every referenced node, apply tee aliasing.
    for (const auto& c : netlist.components) {
        for (const auto& t : c.terminals) merge.intern(t);
        if (c.kind == ComponentKind::tee) {
            int a = merge.intern(c.terminals[0]);
            merge.unite(a, merge.intern(c.terminals[1]));
            merge.unite(a, merge.intern(c.terminals[2]));
        }
    }
    for (const auto& p : netlist.probes) {
        if (merge.ids.find(p.node) == merge.ids.end())
            throw ValidateError("probe '" + p.name + "' references node '" + p.node +
                                    "' that no component touches",
                                p.loc);
    }
    if (merge.parent.empty()) throw ValidateError("netlist has no components");

    // Compact merged classes into node indices; keep the first-seen name.
    CircuitGraph g;
    g.fluid = fluid;
    std::map<int, int> root_to_node;
    auto node_of = [&](const std::string& name) {
        int root = merge.find(merge.ids.at(name));
        auto it = root_to_node.find(root);
        if (it != root_to_node.end()) return it->second;
        int idx = g.node_count();
        root_to_node.emplace(root, idx);
        g.node_names.push_back(merge.names[root]);
        return idx;
    };
    // Deterministic node order: walk components in declaration order.
    for (const auto& c : netlist.components)
        for (const auto& t : c.terminals) node_of(t);

    g.node_fixed.assign(g.node_count(), false);

    // Tanks first so one-terminal elements can attach to ambient.
    for (const auto& c : netlist.components) {
        if (c.kind != ComponentKind::tank) continue;
        int n = node_of(c.terminals[0]);
        g.tank_nodes.push_back(n);
        g.node_fixed[n] = true;
    }
    if (g.tank_nodes.empty()) throw ValidateError("no ambient reference: declare a tank");
    const int ambient = g.tank_nodes.front();

    std::set<int> source_nodes;
    for (const auto& c : netlist.components) {
        switch (c.kind) {
            case ComponentKind::tank:
            case ComponentKind::tee:
                break;
            case ComponentKind::source: {
                int n = node_of(c.terminals[0]);
                if (g.node_fixed[n] && !source_nodes.count(n))
                    throw ValidateError("source '" + c.name + "' drives a tank node", c.loc);
                if (!source_nodes.insert(n).second)
                    throw ValidateError("source-source short: node '" + g.node_names[n] +
                                            "' already has a source",
                                        c.loc);
                double p = c.params.at("pressure").si;
                if (p < 0)
                    throw ValidateError("source '" + c.name + "' pressure must be >= 0", c.loc);
                g.node_fixed[n] = true;
                SourceRef ref;
                ref.name = c.name;
                ref.node = n;
                ref.pressure = p;
                g.sources.push_back(ref);
                break;
            }
            case ComponentKind::hose: {
                HoseParams hp{c.params.at("length").si, c.params.at("diameter").si};
                require_positive(c, "length", hp.length);
                require_positive(c, "diameter", hp.diameter);
                g.branches.push_back({c.name, node_of(c.terminals[0]), node_of(c.terminals[1]),
                                      HoseElem{hose_resistance(hp, fluid)}});
                break;
            }
            case ComponentKind::check: {
                CheckValveParams cp;
                cp.p_crack = param_or(c, "crack", cp.p_crack);
                cp.r_f = param_or(c, "rf", cp.r_f);
                if (cp.p_crack < 0)
                    throw ValidateError("check '" + c.name + "': crack must be >= 0", c.loc);
                require_positive(c, "rf", cp.r_f);
                g.branches.push_back({c.name, node_of(c.terminals[0]), node_of(c.terminals[1]),
                                      CheckElem{cp}});
                break;
            }
            case ComponentKind::notgate: {
                NotValveParams np;
                np.r_open = param_or(c, "r_open", np.r_open);
                np.p_lo = param_or(c, "p_lo", np.p_lo);
                np.p_hi = param_or(c, "p_hi", np.p_hi);
                require_positive(c, "r_open", np.r_open);
                if (!(np.p_lo >= 0 && np.p_lo < np.p_hi))
                    throw ValidateError("not '" + c.name + "': need 0 <= p_lo < p_hi", c.loc);
                NotElem ne{np, node_of(c.terminals[2])};
                g.branches.push_back(
                    {c.name, node_of(c.terminals[0]), node_of(c.terminals[1]), ne});
                break;
            }
            case ComponentKind::andgate: {
                AndValveGeometry ag;
                ag.d0 = param_or(c, "d0", ag.d0);
                ag.d1 = param_or(c, "d1", ag.d1);
                ag.d2 = param_or(c, "d2", ag.d2);
                ag.h1 = param_or(c, "h1", ag.h1);
                ag.cq = param_or(c, "cq", ag.cq);
                ag.alpha = param_or(c, "alpha", ag.alpha);
                ag.beta = param_or(c, "beta", ag.beta);
                ag.area_factor = param_or(c, "aeff", ag.area_factor);
                if (!(ag.d0 >= 0 && ag.d0 < ag.d1 && ag.d1 < ag.d2))
                    throw ValidateError("and '" + c.name + "': need 0 <= d0 < d1 < d2", c.loc);
                require_positive(c, "h1", ag.h1);
                if (!(ag.cq >= 0.6 && ag.cq <= 0.9))
                    throw ValidateError("and '" + c.name + "': cq must be in [0.6, 0.9]", c.loc);
                require_positive(c, "aeff", ag.area_factor);
                // private internal node between the plate gap and the orifice
                int mid = g.node_count();
                g.node_names.push_back("__" + c.name + ".mid");
                g.node_fixed.push_back(false);
                AndElem ae{ag, plate_gap_resistance(ag, fluid),
                           ag.cq * ag.annulus_area() * ag.area_factor, node_of(c.terminals[2]),
                           mid};
                g.branches.push_back(
                    {c.name, node_of(c.terminals[0]), node_of(c.terminals[1]), ae});
                break;
            }
            case ComponentKind::orifice: {
                AndValveGeometry ag;  // reuse the orifice geometry fields
                ag.d1 = c.params.at("d1").si;
                ag.d0 = param_or(c, "d0", 0.0);
                ag.cq = param_or(c, "cq", 0.7);
                if (!(ag.d0 >= 0 && ag.d0 < ag.d1))
                    throw ValidateError("orifice '" + c.name + "': need 0 <= d0 < d1", c.loc);
                if (!(ag.cq >= 0.6 && ag.cq <= 0.9))
                    throw ValidateError("orifice '" + c.name + "': cq must be in [0.6, 0.9]",
                                        c.loc);
                int n1 = node_of(c.terminals[0]);
                int n2 = c.terminals.size() == 2 ? node_of(c.terminals[1]) : ambient;
                g.branches.push_back({c.name, n1, n2, OrificeElem{ag.cq * ag.annulus_area()}});
                break;
            }
        }
    }

    for (const auto& p : netlist.probes) {
        g.probes[p.name] = node_of(p.node);
        g.probe_order.push_back(p.name);
    }
    for (const auto& in : netlist.inputs) {
        bool found = false;
        for (auto& s : g.sources)
            if (s.name == in) {
                s.is_input = true;
                found = true;
            }
        if (!found) throw ValidateError("input '" + in + "' does not name a source");
        g.input_order.push_back(in);
    }
    for (const auto& ax : netlist.aux_sources) {
        bool found = false;
        for (auto& s : g.sources)
            if (s.name == ax) {
                if (s.is_input)
                    throw ValidateError("source '" + ax + "' cannot be both input and aux");
                s.is_aux = true;
                found = true;
            }
        if (!found) throw ValidateError("aux '" + ax + "' does not name a source");
    }

    // Reachability from sources and tanks over branches (control taps count:
    // a control cavity is hydraulically connected to its line).
    std::vector<std::vector<int>> adj(g.node_count());
    auto link = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (const auto& b : g.branches) {
        link(b.n1, b.n2);
        if (const auto* ne = std::get_if<NotElem>(&b.elem)) link(b.n1, ne->ctrl_node);
        if (const auto* ae = std::get_if<AndElem>(&b.elem)) {
            link(b.n1, ae->ctrl_node);
            link(b.n1, ae->mid_node);
        }
    }
    std::vector<char> seen(g.node_count(), 0);
    std::vector<int> stack;
    for (int t : g.tank_nodes) stack.push_back(t);
    for (const auto& s : g.sources) stack.push_back(s.node);
    for (int n : stack) seen[n] = 1;
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        for (int m : adj[n])
            if (!seen[m]) {
                seen[m] = 1;
                stack.push_back(m);
            }
    }
    for (int i = 0; i < g.node_count(); ++i)
        if (!seen[i])
            throw ValidateError("node '" + g.node_names[i] +
                                "' is not reachable from any source or tank");

    return g;
}

}  // namespace fluidlogic
