#include "fluidlogic/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace fluidlogic {

const char* kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::source: return "src";
        case ComponentKind::tank: return "tank";
        case ComponentKind::hose: return "hose";
        case ComponentKind::check: return "check";
        case ComponentKind::tee: return "tee";
        case ComponentKind::notgate: return "not";
        case ComponentKind::andgate: return "and";
        case ComponentKind::orifice: return "orifice";
    }
    return "?";
}

namespace {

struct Token {
    std::string text;
    SourceLoc loc;
};

std::vector<Token> tokenize_line(std::string_view line, int lineno) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({std::string(line.substr(start, i - start)),
                       SourceLoc{lineno, static_cast<int>(start) + 1}});
    }
    return out;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

struct ParamSpec {
    const char* key;
    Dimension dim;
};

struct KindSpec {
    ComponentKind kind;
    int min_terminals;
    int max_terminals;
    std::vector<ParamSpec> params;
    std::vector<const char*> required;
};

const KindSpec& spec_for(ComponentKind k) {
    static const std::vector<KindSpec> kSpecs = {
        {ComponentKind::source, 1, 2, {{"pressure", Dimension::pressure}}, {"pressure"}},
        {ComponentKind::tank, 1, 1, {}, {}},
        {ComponentKind::hose,
         2,
         2,
         {{"length", Dimension::length}, {"diameter", Dimension::length}},
         {"length", "diameter"}},
        {ComponentKind::check,
         2,
         2,
         {{"crack", Dimension::pressure}, {"rf", Dimension::resistance}},
         {}},
        {ComponentKind::tee, 3, 3, {}, {}},
        {ComponentKind::notgate,
         3,
         3,
         {{"r_open", Dimension::resistance},
          {"p_lo", Dimension::pressure},
          {"p_hi", Dimension::pressure}},
         {}},
        {ComponentKind::andgate,
         3,
         3,
         {{"alpha", Dimension::dimensionless},
          {"beta", Dimension::pressure},
          {"d0", Dimension::length},
          {"d1", Dimension::length},
          {"d2", Dimension::length},
          {"h1", Dimension::length},
          {"cq", Dimension::dimensionless},
          {"aeff", Dimension::dimensionless}},
         {}},
        {ComponentKind::orifice,
         1,
         2,
         {{"d1", Dimension::length}, {"d0", Dimension::length}, {"cq", Dimension::dimensionless}},
         {"d1"}},
    };
    for (const auto& s : kSpecs)
        if (s.kind == k) return s;
    throw std::logic_error("unreachable");
}

std::optional<ComponentKind> kind_from_word(std::string_view w) {
    if (w == "src") return ComponentKind::source;
    if (w == "tank") return ComponentKind::tank;
    if (w == "hose") return ComponentKind::hose;
    if (w == "check") return ComponentKind::check;
    if (w == "tee") return ComponentKind::tee;
    if (w == "not") return ComponentKind::notgate;
    if (w == "and") return ComponentKind::andgate;
    if (w == "orifice") return ComponentKind::orifice;
    return std::nullopt;
}

// Gate port keywords, in canonical terminal order.
constexpr const char* kGatePorts[3] = {"in", "out", "ctrl"};

ComponentDecl parse_component(ComponentKind kind, const std::vector<Token>& tok) {
    const KindSpec& ks = spec_for(kind);
    ComponentDecl decl;
    decl.kind = kind;
    decl.loc = tok[0].loc;
    if (tok.size() < 2) throw ParseError("missing component name", tok[0].loc);
    if (!valid_identifier(tok[1].text))
        throw ParseError("bad component name '" + tok[1].text + "'", tok[1].loc);
    decl.name = tok[1].text;

    const bool gate = kind == ComponentKind::notgate || kind == ComponentKind::andgate;
    size_t i = 2;
    if (gate) {
        decl.terminals.assign(3, "");
        for (; i < tok.size(); ++i) {
            const auto& t = tok[i];
            auto eq = t.text.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected key=value, got '" + t.text + "'", t.loc);
            const std::string key = t.text.substr(0, eq);
            const std::string val = t.text.substr(eq + 1);
            bool is_port = false;
            for (int p = 0; p < 3; ++p) {
                if (key == kGatePorts[p]) {
                    if (!decl.terminals[p].empty())
                        throw ParseError("duplicate port '" + key + "'", t.loc);
                    if (!valid_identifier(val))
                        throw ParseError("bad node name '" + val + "'", t.loc);
                    decl.terminals[p] = val;
                    is_port = true;
                    break;
                }
            }
            if (is_port) continue;
            const ParamSpec* ps = nullptr;
            for (const auto& cand : ks.params)
                if (key == cand.key) ps = &cand;
            if (!ps)
                throw ParseError("unknown parameter '" + key + "' for " + kind_name(kind), t.loc);
            if (decl.params.count(key)) throw ParseError("duplicate parameter '" + key + "'", t.loc);
            decl.params[key] = parse_quantity(val, ps->dim, t.loc);
        }
        for (int p = 0; p < 3; ++p)
            if (decl.terminals[p].empty())
                throw ParseError(std::string(kind_name(kind)) + " '" + decl.name +
                                     "' is missing port '" + kGatePorts[p] + "'",
                                 decl.loc);
        return decl;
    }

    // positional terminals, then key=value params (source pressure is positional)
    for (; i < tok.size(); ++i) {
        const auto& t = tok[i];
        if (t.text.find('=') != std::string::npos) break;
        if (kind == ComponentKind::source &&
            static_cast<int>(decl.terminals.size()) >= 1 &&
            (std::isdigit(static_cast<unsigned char>(t.text[0])) || t.text[0] == '-' ||
             t.text[0] == '+' || t.text[0] == '.')) {
            decl.params["pressure"] = parse_quantity(t.text, Dimension::pressure, t.loc);
            ++i;
            break;
        }
        if (!valid_identifier(t.text)) throw ParseError("bad node name '" + t.text + "'", t.loc);
        decl.terminals.push_back(t.text);
    }
    for (; i < tok.size(); ++i) {
        const auto& t = tok[i];
        auto eq = t.text.find('=');
        if (eq == std::string::npos)
            throw ParseError("unexpected token '" + t.text + "'", t.loc);
        const std::string key = t.text.substr(0, eq);
        const std::string val = t.text.substr(eq + 1);
        const ParamSpec* ps = nullptr;
        for (const auto& cand : ks.params)
            if (key == cand.key) ps = &cand;
        if (!ps) throw ParseError("unknown parameter '" + key + "' for " + kind_name(kind), t.loc);
        if (decl.params.count(key)) throw ParseError("duplicate parameter '" + key + "'", t.loc);
        decl.params[key] = parse_quantity(val, ps->dim, t.loc);
    }

    const int nterm = static_cast<int>(decl.terminals.size());
    if (nterm < ks.min_terminals || nterm > ks.max_terminals)
        throw ParseError(std::string(kind_name(kind)) + " '" + decl.name + "' takes " +
                             (ks.min_terminals == ks.max_terminals
                                  ? std::to_string(ks.min_terminals)
                                  : std::to_string(ks.min_terminals) + "-" +
                                        std::to_string(ks.max_terminals)) +
                             " node(s), got " + std::to_string(nterm),
                         decl.loc);
    for (const char* req : ks.required)
        if (!decl.params.count(req))
            throw ParseError(std::string(kind_name(kind)) + " '" + decl.name +
                                 "' requires parameter '" + req + "'",
                             decl.loc);
    return decl;
}

}  // namespace

Netlist parse_netlist(std::string_view text) {
    Netlist nl;
    std::set<std::string> comp_names;
    std::set<std::string> probe_names;

    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        auto tok = tokenize_line(line, lineno);
        if (tok.empty()) continue;
        const std::string& head = tok[0].text;

        if (head == "title") {
            size_t at = line.find("title");
            std::string rest(line.substr(at + 5));
            size_t b = rest.find_first_not_of(" \t");
            nl.title = b == std::string::npos ? "" : rest.substr(b);
            continue;
        }
        if (head == "probe") {
            if (tok.size() != 3)
                throw ParseError("probe takes a name and a node", tok[0].loc);
            if (!probe_names.insert(tok[1].text).second)
                throw ParseError("duplicate probe name '" + tok[1].text + "'", tok[1].loc);
            nl.probes.push_back({tok[1].text, tok[2].text, tok[0].loc});
            continue;
        }
        if (head == "input" || head == "aux") {
            if (tok.size() != 2)
                throw ParseError(head + " takes a source name", tok[0].loc);
            auto& list = head == "input" ? nl.inputs : nl.aux_sources;
            if (std::find(list.begin(), list.end(), tok[1].text) != list.end())
                throw ParseError("duplicate " + head + " declaration '" + tok[1].text + "'",
                                 tok[1].loc);
            list.push_back(tok[1].text);
            continue;
        }
        auto kind = kind_from_word(head);
        if (!kind) throw ParseError("unknown declaration '" + head + "'", tok[0].loc);
        ComponentDecl decl = parse_component(*kind, tok);
        if (!comp_names.insert(decl.name).second)
            throw ParseError("duplicate component name '" + decl.name + "'", decl.loc);
        nl.components.push_back(std::move(decl));
    }
    return nl;
}

std::string serialize(const Netlist& n) {
    std::ostringstream out;
    out << "title " << (n.title ? *n.title : "") << "\n";
    for (const auto& c : n.components) {
        out << kind_name(c.kind) << " " << c.name;
        const bool gate = c.kind == ComponentKind::notgate || c.kind == ComponentKind::andgate;
        if (gate) {
            for (int p = 0; p < 3; ++p) out << " " << kGatePorts[p] << "=" << c.terminals[p];
        } else {
            for (const auto& t : c.terminals) out << " " << t;
        }
        if (c.kind == ComponentKind::source) {
            out << " " << format_quantity(c.params.at("pressure"));
        }
        for (const auto& [key, q] : c.params) {
            if (c.kind == ComponentKind::source && key == "pressure") continue;
            out << " " << key << "=" << format_quantity(q);
        }
        out << "\n";
    }
    for (const auto& p : n.probes) out << "probe " << p.name << " " << p.node << "\n";
    for (const auto& s : n.inputs) out << "input " << s << "\n";
    for (const auto& s : n.aux_sources) out << "aux " << s << "\n";
    return out.str();
}

bool structurally_equal(const Netlist& a, const Netlist& b) {
    if (a.title.value_or("") != b.title.value_or("")) return false;
    if (a.components.size() != b.components.size()) return false;
    for (size_t i = 0; i < a.components.size(); ++i) {
        const auto& x = a.components[i];
        const auto& y = b.components[i];
        if (x.kind != y.kind || x.name != y.name || x.terminals != y.terminals) return false;
        if (x.params != y.params) return false;
    }
    if (a.probes.size() != b.probes.size()) return false;
    for (size_t i = 0; i < a.probes.size(); ++i)
        if (a.probes[i].name != b.probes[i].name || a.probes[i].node != b.probes[i].node)
            return false;
    return a.inputs == b.inputs && a.aux_sources == b.aux_sources;
}

}  // namespace fluidlogic
