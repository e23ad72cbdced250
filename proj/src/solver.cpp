#include "fluidlogic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fluidlogic {

bool is_steady(const SolveOutcome& o) { return std::holds_alternative<SteadyState>(o); }

namespace {

constexpr double kOrificeLinearBelow = 1.0;  // Pa; sqrt law is linearized under this drop

enum : uint8_t { kBlocked = 0, kConducting = 1, kClosed = 0, kOpen = 1, kNotSwitching = 255 };

// Branch flow and its derivative w.r.t. the terminal pressure difference.
struct FlowLaw {
    double q = 0.0;
    double dq = 0.0;
};

FlowLaw orifice_law(double u, double cqa, double rho) {
    const double c = cqa * std::sqrt(2.0 / rho);  // Q = c * sqrt(u) for u > 0
    const double au = std::abs(u);
    if (au <= kOrificeLinearBelow) {
        // secant through the origin at the 1 Pa point: continuous, finite slope
        const double g = c / std::sqrt(kOrificeLinearBelow);
        return {g * u, g};
    }
    const double s = u > 0 ? 1.0 : -1.0;
    const double root = std::sqrt(au);
    return {s * c * root, c / (2.0 * root)};
}

// Fixed-size dense LU with partial pivoting; deterministic pivot choice.
class DenseSolver {
  public:
    explicit DenseSolver(int n) : n_(n), a_(n * n), rhs_(n) {}

    void reset() {
        std::fill(a_.begin(), a_.end(), 0.0);
        std::fill(rhs_.begin(), rhs_.end(), 0.0);
    }
    double& at(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
    double& rhs(int r) { return rhs_[r]; }

    // Solves in place; returns false on a (numerically) singular matrix.
    bool solve(std::vector<double>& x) {
        std::vector<int> perm(n_);
        for (int i = 0; i < n_; ++i) perm[i] = i;
        for (int col = 0; col < n_; ++col) {
            int piv = col;
            double best = std::abs(at(col, col));
            for (int r = col + 1; r < n_; ++r) {
                const double v = std::abs(at(r, col));
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (best == 0.0) return false;
            if (piv != col) {
                for (int c = 0; c < n_; ++c) std::swap(at(piv, c), at(col, c));
                std::swap(rhs_[piv], rhs_[col]);
            }
            const double d = at(col, col);
            for (int r = col + 1; r < n_; ++r) {
                const double f = at(r, col) / d;
                if (f == 0.0) continue;
                for (int c = col; c < n_; ++c) at(r, c) -= f * at(col, c);
                rhs_[r] -= f * rhs_[col];
            }
        }
        x.assign(n_, 0.0);
        for (int r = n_ - 1; r >= 0; --r) {
            double acc = rhs_[r];
            for (int c = r + 1; c < n_; ++c) acc -= at(r, c) * x[c];
            x[r] = acc / at(r, r);
        }
        return true;
    }

  private:
    int n_;
    std::vector<double> a_;
    std::vector<double> rhs_;
};

struct Assignment {
    std::vector<uint8_t> discrete;  // per branch
    std::vector<double> factors;    // per branch, frozen NOT factors (NaN elsewhere)

    bool operator==(const Assignment& o) const {
        if (discrete != o.discrete || factors.size() != o.factors.size()) return false;
        for (size_t i = 0; i < factors.size(); ++i) {
            const bool nan_a = std::isnan(factors[i]);
            const bool nan_b = std::isnan(o.factors[i]);
            if (nan_a != nan_b) return false;
            if (!nan_a && factors[i] != o.factors[i]) return false;
        }
        return true;
    }
};

class SteadySolver {
  public:
    SteadySolver(const CircuitGraph& g, const SolveConfig& cfg) : g_(g), cfg_(cfg) {
        free_index_.assign(g.node_count(), -1);
        for (int i = 0; i < g.node_count(); ++i)
            if (!g.node_fixed[i]) {
                free_index_[i] = n_free_;
                ++n_free_;
            }
    }

    SolveOutcome run(const std::map<std::string, double>& overrides,
                     const Assignment* warm_start) {
        fixed_pressure_.assign(g_.node_count(), 0.0);
        for (const auto& s : g_.sources) fixed_pressure_[s.node] = s.pressure;
        for (const auto& [name, p] : overrides) {
            const SourceRef* s = g_.find_source(name);
            if (!s) throw std::invalid_argument("unknown source '" + name + "'");
            if (p < 0)
                throw std::invalid_argument("source '" + name + "' pressure must be >= 0");
            fixed_pressure_[s->node] = p;
        }

        Assignment state = warm_start ? *warm_start : cold_assignment();
        std::vector<Assignment> history{state};
        std::vector<double> p(g_.node_count(), 0.0);

        for (int outer = 0; outer < cfg_.max_state_iters; ++outer) {
            newton(state, p);
            Assignment next = evaluate_states(state, p);
            if (converged(state, next)) return make_steady(next, p);

            // exact revisit of an earlier assignment = oscillation witness
            for (size_t i = 0; i + 1 < history.size(); ++i) {
                if (history[i] == next) {
                    NoSteadyState no;
                    for (size_t k = i; k < history.size(); ++k)
                        no.cycle.push_back(describe(history[k]));
                    no.cycle.push_back(describe(next));
                    no.diagnosis =
                        "valve-state iteration revisited an earlier assignment (period " +
                        std::to_string(history.size() - i) +
                        "): the topology has no steady state";
                    return no;
                }
            }
            history.push_back(next);
            state = std::move(next);
        }
        throw SolverError("valve-state iteration did not settle within " +
                              std::to_string(cfg_.max_state_iters) + " iterations",
                          last_residual_);
    }

    Assignment cold_assignment() const {
        Assignment a;
        a.discrete.assign(g_.branches.size(), kNotSwitching);
        a.factors.assign(g_.branches.size(), std::numeric_limits<double>::quiet_NaN());
        for (size_t b = 0; b < g_.branches.size(); ++b) {
            const auto& elem = g_.branches[b].elem;
            if (std::holds_alternative<CheckElem>(elem)) a.discrete[b] = kBlocked;
            if (std::holds_alternative<AndElem>(elem)) a.discrete[b] = kClosed;
            if (std::holds_alternative<NotElem>(elem)) {
                a.discrete[b] = kOpen;
                a.factors[b] = 1.0;  // ramp factor at zero control pressure
            }
        }
        return a;
    }

    double eval_residual(const Assignment& state, const std::vector<double>& p) {
        std::vector<double> f(n_free_, 0.0);
        accumulate_flows(state, p, f, nullptr);
        double r = 0.0;
        for (double v : f) r = std::max(r, std::abs(v));
        return r;
    }

  private:
    const CircuitGraph& g_;
    SolveConfig cfg_;
    std::vector<int> free_index_;
    int n_free_ = 0;
    std::vector<double> fixed_pressure_;
    double last_residual_ = 0.0;

    // F[i] = net inflow - g_node * p, for each free node i. When 'jac' is
    // given, stamps d(F)/d(p) as well.
    void accumulate_flows(const Assignment& state, const std::vector<double>& p,
                          std::vector<double>& f, DenseSolver* jac) {
        auto stamp = [&](int n1, int n2, const FlowLaw& law) {
            const int i1 = free_index_[n1];
            const int i2 = free_index_[n2];
            if (i1 >= 0) f[i1] -= law.q;
            if (i2 >= 0) f[i2] += law.q;
            if (!jac) return;
            if (i1 >= 0) jac->at(i1, i1) += law.dq;
            if (i1 >= 0 && i2 >= 0) {
                jac->at(i1, i2) -= law.dq;
                jac->at(i2, i1) -= law.dq;
            }
            if (i2 >= 0) jac->at(i2, i2) += law.dq;
        };
        for (size_t b = 0; b < g_.branches.size(); ++b) {
            const auto& br = g_.branches[b];
            const double u = p[br.n1] - p[br.n2];
            if (const auto* hose = std::get_if<HoseElem>(&br.elem)) {
                const double gcond = 1.0 / hose->resistance;
                stamp(br.n1, br.n2, {gcond * u, gcond});
            } else if (const auto* check = std::get_if<CheckElem>(&br.elem)) {
                if (state.discrete[b] == kConducting) {
                    const double gcond = 1.0 / check->params.r_f + cfg_.g_min;
                    stamp(br.n1, br.n2,
                          {(u - check->params.p_crack) / check->params.r_f + cfg_.g_min * u,
                           gcond});
                } else {
                    stamp(br.n1, br.n2, {cfg_.g_min * u, cfg_.g_min});
                }
            } else if (const auto* nv = std::get_if<NotElem>(&br.elem)) {
                const double gcond = state.factors[b] / nv->params.r_open + cfg_.g_min;
                stamp(br.n1, br.n2, {gcond * u, gcond});
            } else if (const auto* av = std::get_if<AndElem>(&br.elem)) {
                const double u1 = p[br.n1] - p[av->mid_node];
                const double u2 = p[av->mid_node] - p[br.n2];
                if (state.discrete[b] == kOpen) {
                    const double ggap = 1.0 / av->gap_resistance;
                    stamp(br.n1, av->mid_node, {ggap * u1, ggap});
                    stamp(av->mid_node, br.n2, orifice_law(u2, av->cqa_eff, g_.fluid.rho));
                } else {
                    stamp(br.n1, av->mid_node, {cfg_.g_min * u1, cfg_.g_min});
                    stamp(av->mid_node, br.n2, {cfg_.g_min * u2, cfg_.g_min});
                }
            } else if (const auto* orf = std::get_if<OrificeElem>(&br.elem)) {
                stamp(br.n1, br.n2, orifice_law(u, orf->cqa, g_.fluid.rho));
            }
        }
        // node leak to ambient
        for (int n = 0; n < g_.node_count(); ++n) {
            const int i = free_index_[n];
            if (i < 0) continue;
            f[i] -= cfg_.g_node * p[n];
            if (jac) jac->at(i, i) += cfg_.g_node;
        }
    }

    void newton(const Assignment& state, std::vector<double>& p) {
        // cold start every pass: climbing the sqrt laws from below is fast
        // and the result stays independent of the outer iteration history
        for (int n = 0; n < g_.node_count(); ++n)
            p[n] = g_.node_fixed[n] ? fixed_pressure_[n] : 0.0;

        DenseSolver lin(n_free_);
        std::vector<double> f(n_free_);
        std::vector<double> step;
        std::vector<double> trial(p);

        double res = 0.0;
        for (int it = 0; it < cfg_.max_newton; ++it) {
            std::fill(f.begin(), f.end(), 0.0);
            lin.reset();
            accumulate_flows(state, p, f, &lin);
            res = 0.0;
            for (double v : f) res = std::max(res, std::abs(v));
            last_residual_ = res;
            if (res <= cfg_.tolerance) return;

            for (int i = 0; i < n_free_; ++i) lin.rhs(i) = f[i];
            if (!lin.solve(step))
                throw SolverError("singular nodal matrix", res);

            // damped update: halve the step while the residual grows
            double t = cfg_.damping;
            for (int attempt = 0;; ++attempt) {
                for (int n = 0; n < g_.node_count(); ++n) {
                    const int i = free_index_[n];
                    trial[n] = i >= 0 ? p[n] + t * step[i] : p[n];
                }
                const double r2 = eval_residual(state, trial);
                if (r2 < res || attempt >= 30) {
                    p = trial;
                    break;
                }
                t *= 0.5;
            }
        }
        const double final_res = eval_residual(state, p);
        last_residual_ = final_res;
        if (final_res > cfg_.tolerance)
            throw SolverError("Newton did not converge (last residual " +
                                  std::to_string(final_res) + " m3/s)",
                              final_res);
    }

    Assignment evaluate_states(const Assignment& prev, const std::vector<double>& p) const {
        Assignment next = prev;
        for (size_t b = 0; b < g_.branches.size(); ++b) {
            const auto& br = g_.branches[b];
            if (const auto* check = std::get_if<CheckElem>(&br.elem)) {
                const double u = p[br.n1] - p[br.n2];
                next.discrete[b] = u >= check->params.p_crack ? kConducting : kBlocked;
            } else if (const auto* nv = std::get_if<NotElem>(&br.elem)) {
                const double factor =
                    not_valve_conductance_factor(p[nv->ctrl_node], nv->params);
                next.factors[b] = factor;
                next.discrete[b] = factor == 0.0 ? kClosed : kOpen;
            } else if (const auto* av = std::get_if<AndElem>(&br.elem)) {
                const double margin = p[av->ctrl_node] -
                                      (av->geom.alpha * p[br.n1] + av->geom.beta);
                if (margin >= cfg_.switch_deadband)
                    next.discrete[b] = kOpen;
                else if (margin <= -cfg_.switch_deadband)
                    next.discrete[b] = kClosed;
                // inside the band the previous state stands
            }
        }
        return next;
    }

    static bool converged(const Assignment& a, const Assignment& b) {
        if (a.discrete != b.discrete) return false;
        for (size_t i = 0; i < a.factors.size(); ++i) {
            const double x = a.factors[i];
            const double y = b.factors[i];
            if (std::isnan(x) != std::isnan(y)) return false;
            if (!std::isnan(x) && std::abs(x - y) > 1e-12) return false;
        }
        return true;
    }

    std::map<std::string, std::string> describe(const Assignment& a) const {
        std::map<std::string, std::string> out;
        for (size_t b = 0; b < g_.branches.size(); ++b) {
            const auto& br = g_.branches[b];
            if (std::holds_alternative<CheckElem>(br.elem))
                out[br.name] = a.discrete[b] == kConducting ? "conducting" : "blocked";
            else if (std::holds_alternative<AndElem>(br.elem))
                out[br.name] = a.discrete[b] == kOpen ? "open" : "closed";
            else if (std::holds_alternative<NotElem>(br.elem)) {
                if (a.factors[b] == 0.0)
                    out[br.name] = "closed";
                else if (a.factors[b] == 1.0)
                    out[br.name] = "open";
                else {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "partial(%.6g)", a.factors[b]);
                    out[br.name] = buf;
                }
            }
        }
        return out;
    }

    SteadyState make_steady(const Assignment& state, const std::vector<double>& p) {
        SteadyState st;
        st.pressures_by_index = p;
        st.discrete_states = state.discrete;
        st.not_factors = state.factors;
        for (int n = 0; n < g_.node_count(); ++n) st.node_pressures[g_.node_names[n]] = p[n];
        for (size_t b = 0; b < g_.branches.size(); ++b) {
            const auto& br = g_.branches[b];
            st.branch_flows[br.name] = branch_flow(state, p, b);
        }
        st.valve_states = describe(state);
        st.residual = eval_residual(state, p);
        return st;
    }

    double branch_flow(const Assignment& state, const std::vector<double>& p, size_t b) const {
        const auto& br = g_.branches[b];
        const double u = p[br.n1] - p[br.n2];
        if (const auto* hose = std::get_if<HoseElem>(&br.elem)) return u / hose->resistance;
        if (const auto* check = std::get_if<CheckElem>(&br.elem)) {
            if (state.discrete[b] == kConducting)
                return (u - check->params.p_crack) / check->params.r_f + cfg_.g_min * u;
            return cfg_.g_min * u;
        }
        if (const auto* nv = std::get_if<NotElem>(&br.elem))
            return (state.factors[b] / nv->params.r_open + cfg_.g_min) * u;
        if (const auto* av = std::get_if<AndElem>(&br.elem)) {
            const double u1 = p[br.n1] - p[av->mid_node];
            if (state.discrete[b] == kOpen) return u1 / av->gap_resistance;
            return cfg_.g_min * u1;
        }
        if (const auto* orf = std::get_if<OrificeElem>(&br.elem))
            return orifice_law(u, orf->cqa, g_.fluid.rho).q;
        return 0.0;
    }
};

Dimension sweep_param_dimension(ComponentKind kind, const std::string& key) {
    // dimensions for sweepable parameters, mirroring the netlist grammar
    static const std::map<std::string, Dimension> kDims = {
        {"pressure", Dimension::pressure}, {"length", Dimension::length},
        {"diameter", Dimension::length},   {"crack", Dimension::pressure},
        {"rf", Dimension::resistance},     {"r_open", Dimension::resistance},
        {"p_lo", Dimension::pressure},     {"p_hi", Dimension::pressure},
        {"alpha", Dimension::dimensionless}, {"beta", Dimension::pressure},
        {"d0", Dimension::length},         {"d1", Dimension::length},
        {"d2", Dimension::length},         {"h1", Dimension::length},
        {"cq", Dimension::dimensionless},  {"aeff", Dimension::dimensionless},
    };
    (void)kind;
    auto it = kDims.find(key);
    if (it == kDims.end()) throw std::invalid_argument("unknown parameter '" + key + "'");
    return it->second;
}

}  // namespace

SolveOutcome solve_steady(const CircuitGraph& circuit,
                          const std::map<std::string, double>& source_overrides,
                          const SolveConfig& cfg) {
    SteadySolver solver(circuit, cfg);
    return solver.run(source_overrides, nullptr);
}

double residual(const CircuitGraph& circuit, const SteadyState& state, const SolveConfig& cfg) {
    SteadySolver solver(circuit, cfg);
    Assignment a{state.discrete_states, state.not_factors};
    return solver.eval_residual(a, state.pressures_by_index);
}

double discharge_flow(const CircuitGraph& circuit, const SteadyState& state, int node,
                      const SolveConfig& cfg) {
    double out = cfg.g_node * state.pressures_by_index[node];
    auto is_tank = [&](int n) {
        return std::find(circuit.tank_nodes.begin(), circuit.tank_nodes.end(), n) !=
               circuit.tank_nodes.end();
    };
    for (const auto& br : circuit.branches) {
        const double q = state.branch_flows.at(br.name);
        if (br.n1 == node && is_tank(br.n2)) out += q;
        if (br.n2 == node && is_tank(br.n1)) out -= q;
    }
    return out;
}

SweepResult sweep(const Netlist& netlist, const std::string& param_path, double from, double to,
                  int steps, const SolveConfig& cfg, const FluidProps& fluid) {
    if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
    if (from == to) throw std::invalid_argument("sweep endpoints must differ");

    std::string comp = param_path;
    std::string key = "pressure";
    if (auto dot = param_path.find('.'); dot != std::string::npos) {
        comp = param_path.substr(0, dot);
        key = param_path.substr(dot + 1);
    }

    const ComponentDecl* target = nullptr;
    for (const auto& c : netlist.components)
        if (c.name == comp) target = &c;
    if (!target)
        throw std::invalid_argument("sweep target '" + comp + "' does not name a component");
    const Dimension dim = sweep_param_dimension(target->kind, key);

    SweepResult result;
    result.param = comp + "." + key;

    std::optional<Assignment> warm;
    for (int i = 0; i < steps; ++i) {
        const double value = from + (to - from) * static_cast<double>(i) / (steps - 1);
        Netlist patched = netlist;
        for (auto& c : patched.components)
            if (c.name == comp) c.params[key] = Quantity{value, dim};
        CircuitGraph g = validate(patched, fluid);
        SteadySolver solver(g, cfg);
        SolveOutcome out = solver.run({}, warm ? &*warm : nullptr);
        if (const auto* st = std::get_if<SteadyState>(&out))
            warm = Assignment{st->discrete_states, st->not_factors};
        result.points.push_back({value, std::move(out)});
    }
    return result;
}

}  // namespace fluidlogic
