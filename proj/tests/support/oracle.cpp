#include "oracle.hpp"

#include <cmath>

namespace fluidlogic::oracle {

namespace {

// Gauss-Jordan without pivot reordering (diagonally dominant systems).
bool gauss_jordan(std::vector<std::vector<double>>& m, std::vector<double>& b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return false;
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        const double d = m[col][col];
        for (size_t c = 0; c < n; ++c) m[col][c] /= d;
        b[col] /= d;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0.0) continue;
            const double f = m[r][col];
            for (size_t c = 0; c < n; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    return true;
}

struct FrozenBranch {
    int n1, n2;
    double conductance;   // linear part
    double inject;        // constant flow source n1 -> n2 (check cracking offset)
    double cqa = 0.0;     // orifice coefficient when nonlinear, else 0
};

// Orifice conductance at a given drop, mirroring the production secant law.
double orifice_secant(double u, double cqa, double rho) {
    const double c = cqa * std::sqrt(2.0 / rho);
    const double au = std::abs(u);
    if (au <= 1.0) return c;
    return c * std::sqrt(au) / au;  // Q/u
}

}  // namespace

OracleResult enumerate_assignments(const CircuitGraph& g,
                                   const std::map<std::string, double>& overrides,
                                   const SolveConfig& cfg) {
    OracleResult result;
    for (size_t b = 0; b < g.branches.size(); ++b) {
        const auto& e = g.branches[b].elem;
        if (std::holds_alternative<CheckElem>(e) || std::holds_alternative<NotElem>(e) ||
            std::holds_alternative<AndElem>(e))
            result.switching.push_back(static_cast<int>(b));
    }

    std::vector<double> fixed(g.node_count(), 0.0);
    for (const auto& s : g.sources) {
        auto it = overrides.find(s.name);
        fixed[s.node] = it == overrides.end() ? s.pressure : it->second;
    }

    std::vector<int> free_index(g.node_count(), -1);
    int n_free = 0;
    for (int i = 0; i < g.node_count(); ++i)
        if (!g.node_fixed[i]) free_index[i] = n_free++;

    const size_t n_switch = result.switching.size();
    for (size_t mask = 0; mask < (1u << n_switch); ++mask) {
        std::vector<uint8_t> states(n_switch);
        for (size_t k = 0; k < n_switch; ++k) states[k] = (mask >> k) & 1;

        // freeze every branch for this assignment
        std::vector<FrozenBranch> frozen;
        for (size_t b = 0; b < g.branches.size(); ++b) {
            const auto& br = g.branches[b];
            uint8_t st = 0;
            for (size_t k = 0; k < n_switch; ++k)
                if (result.switching[k] == static_cast<int>(b)) st = states[k];
            if (const auto* hose = std::get_if<HoseElem>(&br.elem)) {
                frozen.push_back({br.n1, br.n2, 1.0 / hose->resistance, 0.0});
            } else if (const auto* check = std::get_if<CheckElem>(&br.elem)) {
                if (st)
                    frozen.push_back({br.n1, br.n2, 1.0 / check->params.r_f + cfg.g_min,
                                      -check->params.p_crack / check->params.r_f});
                else
                    frozen.push_back({br.n1, br.n2, cfg.g_min, 0.0});
            } else if (const auto* nv = std::get_if<NotElem>(&br.elem)) {
                frozen.push_back(
                    {br.n1, br.n2, (st ? 1.0 / nv->params.r_open : 0.0) + cfg.g_min, 0.0});
            } else if (const auto* av = std::get_if<AndElem>(&br.elem)) {
                if (st) {
                    frozen.push_back({br.n1, av->mid_node, 1.0 / av->gap_resistance, 0.0});
                    frozen.push_back({av->mid_node, br.n2, 0.0, 0.0, av->cqa_eff});
                } else {
                    frozen.push_back({br.n1, av->mid_node, cfg.g_min, 0.0});
                    frozen.push_back({av->mid_node, br.n2, cfg.g_min, 0.0});
                }
            } else if (const auto* orf = std::get_if<OrificeElem>(&br.elem)) {
                frozen.push_back({br.n1, br.n2, 0.0, 0.0, orf->cqa});
            }
        }

        // secant fixed point on the orifice conductances
        std::vector<double> p(g.node_count(), 0.0);
        for (int i = 0; i < g.node_count(); ++i)
            if (g.node_fixed[i]) p[i] = fixed[i];
        bool solved = false;
        for (int pass = 0; pass < 400; ++pass) {
            std::vector<std::vector<double>> m(n_free, std::vector<double>(n_free, 0.0));
            std::vector<double> rhs(n_free, 0.0);
            for (int i = 0; i < g.node_count(); ++i)
                if (free_index[i] >= 0) m[free_index[i]][free_index[i]] += cfg.g_node;
            for (const auto& fb : frozen) {
                double gcond = fb.conductance;
                if (fb.cqa > 0.0)
                    gcond += orifice_secant(p[fb.n1] - p[fb.n2], fb.cqa, g.fluid.rho);
                const int i1 = free_index[fb.n1];
                const int i2 = free_index[fb.n2];
                if (i1 >= 0) m[i1][i1] += gcond;
                if (i2 >= 0) m[i2][i2] += gcond;
                if (i1 >= 0 && i2 >= 0) {
                    m[i1][i2] -= gcond;
                    m[i2][i1] -= gcond;
                }
                if (i1 >= 0) rhs[i1] -= fb.inject;
                if (i2 >= 0) rhs[i2] += fb.inject;
                if (i1 < 0) {  // fixed terminal contributes to the rhs
                    if (i2 >= 0) rhs[i2] += gcond * p[fb.n1];
                } else if (i2 < 0) {
                    rhs[i1] += gcond * p[fb.n2];
                }
            }
            std::vector<double> prev = p;
            if (!gauss_jordan(m, rhs)) break;
            for (int i = 0; i < g.node_count(); ++i)
                if (free_index[i] >= 0) p[i] = rhs[free_index[i]];
            double delta = 0.0;
            for (int i = 0; i < g.node_count(); ++i)
                delta = std::max(delta, std::abs(p[i] - prev[i]));
            if (delta < 1e-9) {
                solved = true;
                break;
            }
        }
        if (!solved) continue;

        // consistency of the assignment against its own solution
        bool consistent = true;
        for (size_t k = 0; k < n_switch && consistent; ++k) {
            const auto& br = g.branches[result.switching[k]];
            const uint8_t st = states[k];
            if (const auto* check = std::get_if<CheckElem>(&br.elem)) {
                const double u = p[br.n1] - p[br.n2];
                consistent = st ? u >= check->params.p_crack - 1e-9
                                : u <= check->params.p_crack + 1e-9;
            } else if (const auto* nv = std::get_if<NotElem>(&br.elem)) {
                const double ctrl = p[nv->ctrl_node];
                if (ctrl > nv->params.p_lo + 1e-9 && ctrl < nv->params.p_hi - 1e-9)
                    result.binary_representable = false;
                consistent = st ? ctrl <= nv->params.p_lo + 1e-9
                                : ctrl >= nv->params.p_hi - 1e-9;
            } else if (const auto* av = std::get_if<AndElem>(&br.elem)) {
                // same hysteresis band as the production state update
                const double margin =
                    p[av->ctrl_node] - (av->geom.alpha * p[br.n1] + av->geom.beta);
                consistent = st ? margin >= -cfg.switch_deadband
                                : margin <= cfg.switch_deadband;
            }
        }
        if (consistent) result.consistent.push_back({states, p});
    }
    return result;
}

bool matches(const CircuitGraph& g, const OracleResult& oracle, const SolveOutcome& outcome,
             double pressure_rtol) {
    if (!is_steady(outcome)) return oracle.consistent.empty();
    const auto& st = std::get<SteadyState>(outcome);

    // translate the production assignment into the oracle's switching order
    std::vector<uint8_t> got;
    for (int b : oracle.switching) {
        const auto& br = g.branches[b];
        if (std::holds_alternative<NotElem>(br.elem))
            got.push_back(st.not_factors[b] > 0.0 ? 1 : 0);
        else
            got.push_back(st.discrete_states[b]);
    }
    for (const auto& sol : oracle.consistent) {
        if (sol.states != got) continue;
        for (int i = 0; i < g.node_count(); ++i) {
            const double scale = std::max(1.0, std::abs(sol.pressures[i]));
            if (std::abs(sol.pressures[i] - st.pressures_by_index[i]) > pressure_rtol * scale)
                return false;
        }
        return true;
    }
    return false;
}

}  // namespace fluidlogic::oracle
