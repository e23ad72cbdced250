#include "fluidlogic/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fluidlogic {

char level_char(Level l) {
    switch (l) {
        case Level::zero: return '0';
        case Level::one: return '1';
        case Level::x: return 'X';
    }
    return '?';
}

Level quantize(double pressure, const LogicThresholds& t) {
    if (pressure >= t.theta_hi) return Level::one;
    if (pressure <= t.theta_lo) return Level::zero;
    return Level::x;
}

std::string TruthRow::bits_string() const {
    std::string s;
    for (int b : input_bits) s += b ? '1' : '0';
    return s;
}

TruthTable enumerate_truth_table(const CircuitGraph& circuit, const LogicThresholds& t,
                                 const SolveConfig& cfg) {
    if (circuit.probes.empty())
        throw std::invalid_argument("truth table needs at least one probe");
    if (circuit.input_order.empty())
        throw std::invalid_argument("no sources are declared as logic inputs");

    TruthTable table;
    table.inputs = circuit.input_order;
    table.outputs = circuit.probe_order;

    const int n = static_cast<int>(table.inputs.size());
    for (unsigned row = 0; row < (1u << n); ++row) {
        TruthRow r;
        bool any_high = false;
        std::map<std::string, double> drives;
        for (int i = 0; i < n; ++i) {
            const int bit = (row >> i) & 1;
            r.input_bits.push_back(bit);
            any_high |= bit != 0;
            drives[table.inputs[i]] = bit ? t.p_hi_in : 0.0;
        }
        for (const auto& s : circuit.sources)
            if (s.is_aux) drives[s.name] = any_high ? t.p_hi_in : 0.0;

        // row-level failures (oscillation or divergence) are data, not errors
        try {
            SolveOutcome out = solve_steady(circuit, drives, cfg);
            if (const auto* st = std::get_if<SteadyState>(&out)) {
                for (const auto& probe : table.outputs) {
                    const double p = st->pressures_by_index[circuit.probes.at(probe)];
                    r.pressures.push_back(p);
                    r.levels.push_back(quantize(p, t));
                }
            } else {
                r.failed = true;
                r.failure = std::get<NoSteadyState>(out).diagnosis;
            }
        } catch (const SolverError& e) {
            r.failed = true;
            r.failure = e.what();
        }
        if (r.failed) {
            r.levels.assign(table.outputs.size(), Level::x);
            r.pressures.assign(table.outputs.size(), 0.0);
        }
        table.rows.push_back(std::move(r));
    }
    return table;
}

std::string format_truth_table(const TruthTable& t) {
    std::ostringstream out;
    out << "inputs:";
    for (const auto& i : t.inputs) out << " " << i;
    out << "\noutputs:";
    for (const auto& o : t.outputs) out << " " << o;
    out << "\n";
    for (const auto& r : t.rows) {
        out << r.bits_string() << " ->";
        if (r.failed) {
            out << " ! " << r.failure;
        } else {
            for (Level l : r.levels) out << " " << level_char(l);
        }
        out << "\n";
    }
    return out.str();
}

std::string format_truth_table_csv(const TruthTable& t) {
    std::ostringstream out;
    out << "row";
    for (const auto& i : t.inputs) out << "," << i;
    for (const auto& o : t.outputs) out << "," << o;
    for (const auto& o : t.outputs) out << "," << o << "_Pa";
    out << "\r\n";
    for (const auto& r : t.rows) {
        out << r.bits_string();
        for (int b : r.input_bits) out << "," << b;
        for (Level l : r.levels) out << "," << level_char(l);
        for (double p : r.pressures) {
            char buf[40];
            const int len = std::snprintf(buf, sizeof buf, "%.9g", p);
            out << "," << std::string_view(buf, len);
        }
        out << "\r\n";
    }
    return out.str();
}

TruthTable parse_truth_table(std::string_view text) {
    TruthTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "inputs:") {
            std::string w;
            while (ls >> w) t.inputs.push_back(w);
        } else if (head == "outputs:") {
            std::string w;
            while (ls >> w) t.outputs.push_back(w);
        } else {
            TruthRow r;
            for (char c : head) {
                if (c != '0' && c != '1')
                    throw ParseError("bad input bits '" + head + "'", {lineno, 1});
                r.input_bits.push_back(c - '0');
            }
            std::string arrow;
            ls >> arrow;
            if (arrow != "->") throw ParseError("expected '->'", {lineno, 1});
            std::string w;
            while (ls >> w) {
                if (w == "0")
                    r.levels.push_back(Level::zero);
                else if (w == "1")
                    r.levels.push_back(Level::one);
                else if (w == "X" || w == "x")
                    r.levels.push_back(Level::x);
                else
                    throw ParseError("bad level '" + w + "'", {lineno, 1});
            }
            r.pressures.assign(r.levels.size(), 0.0);
            t.rows.push_back(std::move(r));
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Boolean expression parser

namespace {

struct ExprToken {
    enum class Kind { ident, op_not, op_and, op_or, op_xor, lparen, rparen, end };
    Kind kind;
    std::string text;
    int column;
};

class ExprLexer {
  public:
    explicit ExprLexer(std::string_view text) : text_(text) { advance(); }
    const ExprToken& peek() const { return cur_; }
    ExprToken take() {
        ExprToken t = cur_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const int col = static_cast<int>(pos_) + 1;
        if (pos_ >= text_.size()) {
            cur_ = {ExprToken::Kind::end, "", col};
            return;
        }
        const char c = text_[pos_];
        if (c == '!' || c == '&' || c == '|' || c == '^' || c == '(' || c == ')') {
            ++pos_;
            auto k = c == '!'   ? ExprToken::Kind::op_not
                     : c == '&' ? ExprToken::Kind::op_and
                     : c == '|' ? ExprToken::Kind::op_or
                     : c == '^' ? ExprToken::Kind::op_xor
                     : c == '(' ? ExprToken::Kind::lparen
                                : ExprToken::Kind::rparen;
            cur_ = {k, std::string(1, c), col};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string word(text_.substr(start, pos_ - start));
            std::string upper = word;
            std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
            if (upper == "NOT")
                cur_ = {ExprToken::Kind::op_not, word, col};
            else if (upper == "AND")
                cur_ = {ExprToken::Kind::op_and, word, col};
            else if (upper == "OR")
                cur_ = {ExprToken::Kind::op_or, word, col};
            else if (upper == "XOR")
                cur_ = {ExprToken::Kind::op_xor, word, col};
            else
                cur_ = {ExprToken::Kind::ident, word, col};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", {1, col});
    }

    std::string_view text_;
    size_t pos_ = 0;
    ExprToken cur_{ExprToken::Kind::end, "", 1};
};

BoolExprPtr make_node(BoolExpr::Op op, std::string var, BoolExprPtr l, BoolExprPtr r) {
    auto n = std::make_shared<BoolExpr>();
    n->op = op;
    n->var = std::move(var);
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class ExprParser {
  public:
    explicit ExprParser(std::string_view text) : lex_(text) {}

    BoolExprPtr parse() {
        BoolExprPtr e = parse_or();
        const auto& t = lex_.peek();
        if (t.kind != ExprToken::Kind::end)
            throw ParseError("unexpected '" + t.text + "'", {1, t.column});
        return e;
    }

  private:
    BoolExprPtr parse_or() {
        BoolExprPtr e = parse_xor();
        while (lex_.peek().kind == ExprToken::Kind::op_or) {
            lex_.take();
            e = make_node(BoolExpr::Op::bor, "", e, parse_xor());
        }
        return e;
    }
    BoolExprPtr parse_xor() {
        BoolExprPtr e = parse_and();
        while (lex_.peek().kind == ExprToken::Kind::op_xor) {
            lex_.take();
            e = make_node(BoolExpr::Op::bxor, "", e, parse_and());
        }
        return e;
    }
    BoolExprPtr parse_and() {
        BoolExprPtr e = parse_unary();
        while (lex_.peek().kind == ExprToken::Kind::op_and) {
            lex_.take();
            e = make_node(BoolExpr::Op::band, "", e, parse_unary());
        }
        return e;
    }
    BoolExprPtr parse_unary() {
        if (lex_.peek().kind == ExprToken::Kind::op_not) {
            lex_.take();
            return make_node(BoolExpr::Op::bnot, "", parse_unary(), nullptr);
        }
        return parse_primary();
    }
    BoolExprPtr parse_primary() {
        ExprToken t = lex_.take();
        if (t.kind == ExprToken::Kind::ident)
            return make_node(BoolExpr::Op::var, t.text, nullptr, nullptr);
        if (t.kind == ExprToken::Kind::lparen) {
            BoolExprPtr e = parse_or();
            ExprToken close = lex_.take();
            if (close.kind != ExprToken::Kind::rparen)
                throw ParseError("expected ')'", {1, close.column});
            return e;
        }
        throw ParseError(t.kind == ExprToken::Kind::end
                             ? "unexpected end of expression"
                             : "unexpected '" + t.text + "'",
                         {1, t.column});
    }

    ExprLexer lex_;
};

void collect_vars_into(const BoolExprPtr& e, std::vector<std::string>& out) {
    if (!e) return;
    if (e->op == BoolExpr::Op::var) {
        if (std::find(out.begin(), out.end(), e->var) == out.end()) out.push_back(e->var);
        return;
    }
    collect_vars_into(e->lhs, out);
    collect_vars_into(e->rhs, out);
}

}  // namespace

BoolExprPtr parse_bool_expr(std::string_view text) { return ExprParser(text).parse(); }

std::vector<std::string> collect_vars(const BoolExprPtr& e) {
    std::vector<std::string> out;
    collect_vars_into(e, out);
    return out;
}

bool eval_bool(const BoolExprPtr& e, const std::vector<std::string>& vars,
               const std::vector<int>& bits) {
    switch (e->op) {
        case BoolExpr::Op::var: {
            auto it = std::find(vars.begin(), vars.end(), e->var);
            return bits[static_cast<size_t>(it - vars.begin())] != 0;
        }
        case BoolExpr::Op::bnot: return !eval_bool(e->lhs, vars, bits);
        case BoolExpr::Op::band:
            return eval_bool(e->lhs, vars, bits) && eval_bool(e->rhs, vars, bits);
        case BoolExpr::Op::bor:
            return eval_bool(e->lhs, vars, bits) || eval_bool(e->rhs, vars, bits);
        case BoolExpr::Op::bxor:
            return eval_bool(e->lhs, vars, bits) != eval_bool(e->rhs, vars, bits);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Gate library and compiler

namespace {

// Builds netlists declaration by declaration with shared default quantities.
struct NetBuilder {
    const GateLibrary& lib;
    Netlist nl;
    int counter = 0;

    explicit NetBuilder(const GateLibrary& l, std::string title) : lib(l) {
        nl.title = std::move(title);
    }

    std::string fresh(const std::string& stem) { return stem + std::to_string(++counter); }

    static Quantity len(double m) { return {m, Dimension::length}; }
    static Quantity pres(double pa) { return {pa, Dimension::pressure}; }

    void source(const std::string& name, const std::string& node, double pa, bool input,
                bool aux = false) {
        nl.components.push_back(
            {ComponentKind::source, name, {node}, {{"pressure", pres(pa)}}, {}});
        if (input) nl.inputs.push_back(name);
        if (aux) nl.aux_sources.push_back(name);
    }
    void hose(const std::string& name, const std::string& a, const std::string& b) {
        nl.components.push_back({ComponentKind::hose,
                                 name,
                                 {a, b},
                                 {{"length", len(lib.hose_length)},
                                  {"diameter", len(lib.hose_diameter)}},
                                 {}});
    }
    void check(const std::string& name, const std::string& a, const std::string& b) {
        nl.components.push_back({ComponentKind::check, name, {a, b}, {}, {}});
    }
    void tee(const std::string& name, const std::string& a, const std::string& b,
             const std::string& c) {
        nl.components.push_back({ComponentKind::tee, name, {a, b, c}, {}, {}});
    }
    void notgate(const std::string& name, const std::string& in, const std::string& out,
                 const std::string& ctrl) {
        nl.components.push_back({ComponentKind::notgate, name, {in, out, ctrl}, {}, {}});
    }
    void andgate(const std::string& name, const std::string& in, const std::string& out,
                 const std::string& ctrl) {
        nl.components.push_back({ComponentKind::andgate, name, {in, out, ctrl}, {}, {}});
    }
    void load(const std::string& name, const std::string& node) {
        nl.components.push_back({ComponentKind::orifice,
                                 name,
                                 {node},
                                 {{"d1", len(lib.load_diameter)},
                                  {"cq", Quantity{lib.load_cq, Dimension::dimensionless}}},
                                 {}});
    }
    void probe(const std::string& name, const std::string& node) {
        nl.probes.push_back({name, node, {}});
    }
    void tank(const std::string& node) {
        nl.components.push_back({ComponentKind::tank, "amb", {node}, {}, {}});
    }

    // input source + supply hose; returns the line node
    std::string input_line(const std::string& src_name, const std::string& line) {
        const std::string snode = "s_" + src_name;
        source(src_name, snode, lib.supply, true);
        hose("h_" + src_name, snode, line);
        return line;
    }

    // dual-NOT + OR structure between two signal lines; returns the output node
    std::string xor_core(const std::string& a, const std::string& b) {
        const std::string tag = std::to_string(++counter);
        const std::string na = "xa" + tag, nb = "xb" + tag;
        const std::string oa = "oa" + tag, ob = "ob" + tag;
        const std::string ja = "ja" + tag, jb = "jb" + tag;
        const std::string ta = "ta" + tag, tb = "tb" + tag, tc = "tc" + tag;
        hose("hxa" + tag, a, na);
        notgate("nA" + tag, na, oa, b);
        hose("hxb" + tag, b, nb);
        notgate("nB" + tag, nb, ob, a);
        hose("hoa" + tag, oa, ja);
        check("cvA" + tag, ja, ta);
        hose("hob" + tag, ob, jb);
        check("cvB" + tag, jb, tb);
        tee("t" + tag, ta, tb, tc);
        return tc;
    }
};

}  // namespace

Netlist GateLibrary::or_gate() const {
    NetBuilder b(*this, "OR gate: T-junction with a check valve on each input");
    b.source("in1", "s1", supply, true);
    b.source("in2", "s2", supply, true);
    b.hose("h1", "s1", "a");
    b.hose("h2", "s2", "b");
    b.check("cv1", "a", "ta");
    b.check("cv2", "b", "tb");
    b.tee("t1", "ta", "tb", "tc");
    b.hose("h3", "tc", "out");
    b.load("vent", "out");
    b.probe("out", "out");
    b.tank("sink");
    return b.nl;
}

Netlist GateLibrary::not_bench() const {
    NetBuilder b(*this, "NOT gate bench: supply through the valve, input on the control");
    b.source("sup", "s0", supply, false);
    b.source("in1", "c0", supply, true);
    b.hose("h1", "s0", "nin");
    b.hose("h2", "c0", "ctl");
    b.notgate("g1", "nin", "nout", "ctl");
    b.hose("h3", "nout", "out");
    b.load("vent", "out");
    b.probe("out", "out");
    b.tank("sink");
    return b.nl;
}

Netlist GateLibrary::and_bench() const {
    NetBuilder b(*this, "AND gate bench: input on the orifice path, control lifts the discs");
    b.source("in1", "s1", supply, true);
    b.source("in2", "s2", supply, true);
    b.hose("h1", "s1", "a");
    b.hose("h2", "s2", "c");
    b.andgate("g1", "a", "o", "c");
    b.hose("h3", "o", "out");
    b.load("vent", "out");
    b.probe("out", "out");
    b.tank("sink");
    return b.nl;
}

Netlist GateLibrary::xor_gate() const {
    NetBuilder b(*this, "XOR: dual NOT gates joined by an OR stage");
    b.input_line("in1", "a");
    b.input_line("in2", "b");
    const std::string tc = b.xor_core("a", "b");
    b.hose("h_out", tc, "out");
    b.load("vent", "out");
    b.probe("out", "out");
    b.tank("sink");
    return b.nl;
}

Netlist GateLibrary::and_alt_gate() const {
    NetBuilder b(*this, "AND from XOR structure plus an inverting NOT stage");
    b.input_line("in1", "a");
    b.input_line("in2", "b");
    const std::string tc = b.xor_core("a", "b");
    b.hose("h_x", tc, "x");
    b.source("sup3", "s3", supply, false, true);  // aux: idle when no input is driven
    b.hose("h_sup", "s3", "n3");
    b.notgate("g_inv", "n3", "o3", "x");
    b.hose("h_out", "o3", "out");
    b.load("vent", "out");
    b.probe("out", "out");
    b.tank("sink");
    return b.nl;
}

Netlist GateLibrary::half_adder(HalfAdderVariant v) const {
    if (v == HalfAdderVariant::type1) {
        NetBuilder b(*this, "half adder type I: XOR for Sum, disc-pole-disc AND for Carry");
        b.input_line("in1", "a");
        b.input_line("in2", "b");
        // XOR section
        b.hose("h3", "a", "na");
        b.notgate("nA", "na", "oA", "b");
        b.hose("h4", "b", "nb");
        b.notgate("nB", "nb", "oB", "a");
        b.hose("h5", "oA", "ja");
        b.check("cvA", "ja", "ta");
        b.hose("h6", "oB", "jb");
        b.check("cvB", "jb", "tb");
        b.tee("t1", "ta", "tb", "tc");
        b.hose("h7", "tc", "sum");
        b.load("loadS", "sum");
        b.probe("Sum", "sum");
        // AND section
        b.hose("h8", "a", "ain");
        b.andgate("gA", "ain", "ao", "b");
        b.hose("h9", "ao", "carry");
        b.load("loadC", "carry");
        b.probe("Carry", "carry");
        b.tank("sink");
        return b.nl;
    }
    NetBuilder b(*this, "half adder type II: XOR into a NOT whose two outlets are Sum and Carry");
    b.input_line("in1", "a");
    b.input_line("in2", "b");
    b.hose("h3", "a", "na");
    b.notgate("nA", "na", "oA", "b");
    b.hose("h4", "b", "nb");
    b.notgate("nB", "nb", "oB", "a");
    b.hose("h5", "oA", "ja");
    b.check("cvA", "ja", "ta");
    b.hose("h6", "oB", "jb");
    b.check("cvB", "jb", "tb");
    b.tee("t1", "ta", "tb", "tc");
    b.hose("h7", "tc", "sum");
    b.load("loadS", "sum");
    b.probe("Sum", "sum");
    // carry stage: dedicated supply gated by the XOR output
    b.source("sup3", "s3", supply, false, true);
    b.hose("h8", "s3", "n3");
    b.notgate("nC", "n3", "oc", "sum");
    b.hose("h9", "oc", "carry");
    b.load("loadC", "carry");
    b.probe("Carry", "carry");
    b.tank("sink");
    return b.nl;
}

Netlist GateLibrary::cross_coupled_loop() const {
    NetBuilder b(*this, "cross-coupled dual NOT loop (outputs drive each other's control)");
    b.source("sup1", "s1", supply, false);
    b.source("sup2", "s2", supply, false);
    b.hose("h1", "s1", "na");
    b.hose("h2", "s2", "nb");
    b.notgate("nA", "na", "x", "y");
    b.notgate("nB", "nb", "y", "x");
    b.load("ventx", "x");
    b.load("venty", "y");
    b.probe("x", "x");
    b.probe("y", "y");
    b.tank("sink");
    return b.nl;
}

Netlist half_adder_template(HalfAdderVariant v, const GateLibrary& lib) {
    return lib.half_adder(v);
}

namespace {

class Compiler {
  public:
    Compiler(const GateLibrary& lib, bool alt_and)
        : b_(lib, "compiled expression"), alt_and_(alt_and) {}

    Netlist run(const BoolExprPtr& e) {
        const std::string root = emit(e);
        b_.hose(b_.fresh("h"), root, "out");
        b_.load("vent", "out");
        b_.probe("out", "out");
        b_.tank("sink");
        // declared input order = first occurrence order
        return std::move(b_.nl);
    }

  private:
    std::string emit(const BoolExprPtr& e) {
        switch (e->op) {
            case BoolExpr::Op::var: {
                auto it = var_lines_.find(e->var);
                if (it != var_lines_.end()) return it->second;
                const std::string line = "v_" + e->var;
                b_.input_line("in_" + e->var, line);
                var_lines_.emplace(e->var, line);
                return line;
            }
            case BoolExpr::Op::bnot: {
                const std::string x = emit(e->lhs);
                const std::string tag = b_.fresh("");
                b_.source("sup" + tag, "sn" + tag, b_.lib.supply, false);
                b_.hose("hn" + tag, "sn" + tag, "ni" + tag);
                b_.notgate("not" + tag, "ni" + tag, "no" + tag, x);
                return "no" + tag;
            }
            case BoolExpr::Op::band: {
                const std::string x = emit(e->lhs);
                const std::string y = emit(e->rhs);
                if (alt_and_) {
                    const std::string tc = b_.xor_core(x, y);
                    const std::string tag = b_.fresh("");
                    // the inverting stage gets its own supply, idled with the rig
                    b_.source("sup" + tag, "sa" + tag, b_.lib.supply, false, true);
                    b_.hose("ha" + tag, "sa" + tag, "ai" + tag);
                    b_.notgate("alt" + tag, "ai" + tag, "ax" + tag, tc);
                    return "ax" + tag;
                }
                const std::string tag = b_.fresh("");
                b_.hose("hg" + tag, x, "gi" + tag);
                b_.andgate("and" + tag, "gi" + tag, "go" + tag, y);
                return "go" + tag;
            }
            case BoolExpr::Op::bor: {
                const std::string x = emit(e->lhs);
                const std::string y = emit(e->rhs);
                const std::string tag = b_.fresh("");
                b_.check("cva" + tag, x, "ra" + tag);
                b_.check("cvb" + tag, y, "rb" + tag);
                b_.tee("t" + tag, "ra" + tag, "rb" + tag, "rc" + tag);
                return "rc" + tag;
            }
            case BoolExpr::Op::bxor: {
                // sequence the emissions: inputs declare in first-occurrence order
                const std::string x = emit(e->lhs);
                const std::string y = emit(e->rhs);
                return b_.xor_core(x, y);
            }
        }
        throw std::logic_error("unreachable");
    }

    NetBuilder b_;
    bool alt_and_;
    std::map<std::string, std::string> var_lines_;
};

}  // namespace

Netlist compile_to_netlist(const BoolExprPtr& e, const GateLibrary& lib, bool alt_and) {
    return Compiler(lib, alt_and).run(e);
}

VerifyReport verify(const CircuitGraph& circuit, const TruthTable& expected,
                    const LogicThresholds& t, const SolveConfig& cfg) {
    VerifyReport rep;
    if (expected.inputs != circuit.input_order) {
        rep.dimension_ok = false;
        rep.message = "input dimension mismatch: expected table has " +
                      std::to_string(expected.inputs.size()) + " input(s), circuit declares " +
                      std::to_string(circuit.input_order.size());
        return rep;
    }
    if (expected.outputs != circuit.probe_order) {
        rep.dimension_ok = false;
        rep.message = "output mismatch: expected table and circuit probes differ";
        return rep;
    }

    TruthTable got = enumerate_truth_table(circuit, t, cfg);
    if (expected.rows.size() != got.rows.size()) {
        rep.dimension_ok = false;
        rep.message = "row count mismatch";
        return rep;
    }
    rep.pass = true;
    for (size_t i = 0; i < got.rows.size(); ++i) {
        // rows keyed by bit pattern, not position
        const TruthRow& g = got.rows[i];
        const TruthRow* e = nullptr;
        for (const auto& row : expected.rows)
            if (row.input_bits == g.input_bits) e = &row;
        if (!e) {
            rep.pass = false;
            rep.mismatches.push_back({g.bits_string(), "*", "row missing from table", "", 0.0});
            continue;
        }
        for (size_t o = 0; o < got.outputs.size(); ++o) {
            const Level want = e->levels[o];
            const Level have = g.failed ? Level::x : g.levels[o];
            if (want != have || have == Level::x) {
                rep.pass = false;
                rep.mismatches.push_back({g.bits_string(), got.outputs[o],
                                          std::string(1, level_char(want)),
                                          g.failed ? "no steady state"
                                                   : std::string(1, level_char(have)),
                                          g.failed ? 0.0 : g.pressures[o]});
            }
        }
    }
    rep.message = rep.pass ? "all rows match" : "rows mismatch";
    return rep;
}

}  // namespace fluidlogic
