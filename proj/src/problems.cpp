#include "pdot/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_bits(const std::vector<Decision>& candidates, std::size_t len,
                  const char* what) {
    if (candidates.empty())
        throw Error(std::string(what) + ": candidate set must be nonempty");
    for (const Decision& x : candidates) {
        if (x.size() != len)
            throw DimensionMismatch(std::string(what) + ": candidate of length " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(len));
        for (double v : x)
            if (v != 0.0 && v != 1.0)
                throw Error(std::string(what) + ": candidates must be 0/1 vectors");
    }
}

} // namespace

std::vector<double> AffineVectorMap::operator()(const Scenario& xi) const {
    if (A.cols() != xi.dim())
        throw DimensionMismatch("affine map expects dim " + std::to_string(A.cols()));
    std::vector<double> out(b);
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k)
            out[i] += A.at(i, k) * xi[k];
    return out;
}

Matrix AffineMatrixMap::operator()(const Scenario& xi) const {
    if (Tk.size() != xi.dim())
        throw DimensionMismatch("affine matrix map expects dim " + std::to_string(Tk.size()));
    Matrix out = T0;
    for (std::size_t k = 0; k < Tk.size(); ++k)
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t j = 0; j < out.cols(); ++j)
                out.at(i, j) += xi[k] * Tk[k].at(i, j);
    return out;
}

double second_stage(const TwoStageInstance& instance, const Decision& x, const Scenario& xi) {
    if (xi.dim() != instance.dim)
        throw DimensionMismatch(instance.name + ": scenario dim " + std::to_string(xi.dim()) +
                                ", instance dim " + std::to_string(instance.dim));
    double q = instance.recourse_oracle(x, xi);
    if (!std::isfinite(q))
        throw InfeasibleRecourse(instance.name + ": recourse value not finite");
    return q;
}

double second_stage_minform(const TwoStageInstance& instance, const Decision& x,
                            const Scenario& xi) {
    double q = second_stage(instance, x, xi);
    return instance.orientation == Orientation::MaxValue ? -q : q;
}

std::size_t optimal_first_stage(const TwoStageInstance& instance, const Scenario& xi) {
    std::size_t best = 0;
    double best_value = kInf;
    for (std::size_t k = 0; k < instance.candidates.size(); ++k) {
        const Decision& x = instance.candidates[k];
        double v = instance.first_stage_cost(x) + second_stage_minform(instance, x, xi);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    return best;
}

ExpectedValueResult expected_value(const TwoStageInstance& instance,
                                   const DiscreteDistribution& P) {
    ExpectedValueResult res;
    res.value = kInf;
    for (std::size_t k = 0; k < instance.candidates.size(); ++k) {
        const Decision& x = instance.candidates[k];
        double v = instance.first_stage_cost(x);
        for (std::size_t i = 0; i < P.size(); ++i)
            v += P.weight(i) * second_stage_minform(instance, x, P.atom(i));
        if (v < res.value) {
            res.value = v;
            res.minimizer = k;
        }
    }
    return res;
}

NewsvendorInstance build_newsvendor(double order_cost, double holding, double penalty,
                                    const std::vector<double>& x_grid) {
    if (x_grid.empty())
        throw Error("newsvendor: empty order-quantity grid");
    if (order_cost < 0.0 || holding < 0.0 || penalty < 0.0)
        throw Error("newsvendor: costs must be nonnegative");

    NewsvendorInstance out;
    out.order_cost = order_cost;
    out.holding = holding;
    out.penalty = penalty;
    out.q = {holding, penalty};
    out.M_pi = dual_inf_norm_bound(out.W, out.q);

    TwoStageInstance& inst = out.instance;
    inst.name = "newsvendor";
    inst.dim = 1;
    inst.recourse = RecourseKind::Continuous;
    for (double x : x_grid)
        inst.candidates.push_back({x});
    inst.first_stage_cost = [order_cost](const Decision& x) { return order_cost * x[0]; };
    auto oracle = [holding, penalty](const Decision& x, const Scenario& xi) {
        return holding * std::max(x[0] - xi[0], 0.0) + penalty * std::max(xi[0] - x[0], 0.0);
    };
    inst.recourse_oracle = oracle;
    inst.recourse_relaxation = oracle;
    // Dual of the single balance row u − v = x − xi.
    inst.scenario_duals = [holding, penalty](const Decision& x, const Scenario& xi) {
        double slack = x[0] - xi[0];
        return std::vector<double>{slack > 0.0 ? holding : (slack < 0.0 ? -penalty : 0.0)};
    };
    return out;
}

FixedRecourseLpInstance build_fixed_recourse_lp(std::vector<double> q, Matrix W,
                                                AffineVectorMap h_map, AffineMatrixMap T_map,
                                                std::vector<Decision> candidates) {
    std::size_t m = W.rows();
    if (q.size() != W.cols())
        throw DimensionMismatch("fixed-recourse: objective length vs W columns");
    if (h_map.A.rows() != m || h_map.b.size() != m)
        throw DimensionMismatch("fixed-recourse: h map must produce one value per row of W");
    if (T_map.T0.rows() != m)
        throw DimensionMismatch("fixed-recourse: T map row count vs W");
    if (candidates.empty())
        throw Error("fixed-recourse: candidate set must be nonempty");
    std::size_t xdim = candidates.front().size();
    if (T_map.T0.cols() != xdim)
        throw DimensionMismatch("fixed-recourse: T map column count vs decision length");
    for (const Matrix& Tk : T_map.Tk)
        if (Tk.rows() != m || Tk.cols() != xdim)
            throw DimensionMismatch("fixed-recourse: inconsistent T map coefficient shape");
    for (const Decision& x : candidates)
        if (x.size() != xdim)
            throw DimensionMismatch("fixed-recourse: ragged candidate list");

    FixedRecourseLpInstance out;
    out.q = q;
    out.W = W;
    out.h_map = h_map;
    out.T_map = T_map;
    out.M_pi = dual_inf_norm_bound(W, q);
    for (const Decision& x : candidates)
        for (double v : x)
            out.R = std::max(out.R, std::abs(v));

    TwoStageInstance& inst = out.instance;
    inst.name = "fixed-recourse-lp";
    inst.dim = h_map.A.cols();
    inst.recourse = RecourseKind::Continuous;
    inst.candidates = std::move(candidates);
    inst.first_stage_cost = [](const Decision&) { return 0.0; };

    auto solve_stage = [q, W, h_map, T_map](const Decision& x, const Scenario& xi) {
        std::vector<double> b = h_map(xi);
        Matrix T = T_map(xi);
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < T.cols(); ++j)
                b[i] -= T.at(i, j) * x[j];
        return solve(LinearProgram{q, W, b});
    };
    inst.recourse_oracle = [solve_stage](const Decision& x, const Scenario& xi) {
        LpSolution s = solve_stage(x, xi);
        if (s.status != LpStatus::Optimal)
            throw InfeasibleRecourse("fixed-recourse-lp: second stage " +
                                     std::string(s.status == LpStatus::Infeasible
                                                     ? "infeasible"
                                                     : "unbounded"));
        return s.objective_value;
    };
    inst.recourse_relaxation = inst.recourse_oracle;
    inst.scenario_duals = [solve_stage](const Decision& x, const Scenario& xi) {
        LpSolution s = solve_stage(x, xi);
        if (s.status != LpStatus::Optimal)
            throw InfeasibleRecourse("fixed-recourse-lp: second stage not optimal");
        return s.dual;
    };
    return out;
}

CflInstance build_cfl_single_source(Matrix assignment_costs, std::vector<double> capacities,
                                    std::vector<Decision> opening_candidates) {
    std::size_t I = assignment_costs.rows();
    std::size_t J = assignment_costs.cols();
    if (I == 0 || J == 0)
        throw Error("cfl: need at least one facility and one customer");
    if (capacities.size() != I)
        throw DimensionMismatch("cfl: one capacity per facility");
    require_bits(opening_candidates, I, "cfl");

    double combos = std::pow(static_cast<double>(I), static_cast<double>(J));
    if (combos > 1e6)
        throw EnumerationTooLarge("cfl: " + std::to_string(I) + "^" + std::to_string(J) +
                                  " assignments");

    CflInstance out;
    out.assignment_costs = assignment_costs;
    out.capacities = capacities;

    TwoStageInstance& inst = out.instance;
    inst.name = "cfl-single-source";
    inst.dim = J;
    inst.recourse = RecourseKind::Milp;
    inst.candidates = std::move(opening_candidates);
    inst.first_stage_cost = [](const Decision&) { return 0.0; };
    inst.recourse_oracle = [assignment_costs, capacities, I, J](const Decision& y,
                                                                const Scenario& xi) {
        std::vector<std::size_t> assign(J, 0);
        double best = kInf;
        while (true) {
            double cost = 0.0;
            std::vector<double> load(I, 0.0);
            for (std::size_t j = 0; j < J; ++j) {
                cost += assignment_costs.at(assign[j], j) * xi[j];
                load[assign[j]] += xi[j];
            }
            bool feasible = true;
            for (std::size_t i = 0; i < I; ++i)
                if (load[i] > capacities[i] * y[i] + 1e-9)
                    feasible = false;
            if (feasible)
                best = std::min(best, cost);

            std::size_t j = 0;
            while (j < J && assign[j] + 1 == I) {
                assign[j] = 0;
                ++j;
            }
            if (j == J)
                break;
            assign[j] += 1;
        }
        if (best == kInf)
            throw InfeasibleRecourse("cfl: no feasible single-sourcing assignment");
        return best;
    };
    return out;
}

KnapsackInstance build_unbounded_knapsack(std::vector<std::int64_t> weights,
                                          std::vector<double> values) {
    if (weights.empty() || weights.size() != values.size())
        throw DimensionMismatch("knapsack: weights and values must pair up");
    for (std::int64_t w : weights)
        if (w < 1)
            throw Error("knapsack: weights must be positive integers");
    for (double v : values)
        if (v < 0.0)
            throw Error("knapsack: values must be nonnegative");

    KnapsackInstance out;
    out.weights = weights;
    out.values = values;
    out.g = weights.front();
    for (std::int64_t w : weights)
        out.g = std::gcd(out.g, w);
    for (std::size_t j = 0; j < weights.size(); ++j)
        out.rho = std::max(out.rho, values[j] / static_cast<double>(weights[j]));
    double rho = out.rho;

    TwoStageInstance& inst = out.instance;
    inst.name = "unbounded-knapsack";
    inst.dim = 1;
    inst.recourse = RecourseKind::Milp;
    inst.orientation = Orientation::MaxValue;
    inst.candidates = {{0.0}};
    inst.first_stage_cost = [](const Decision&) { return 0.0; };
    inst.recourse_oracle = [weights, values](const Decision&, const Scenario& xi) {
        double cap = std::floor(xi[0]);
        if (cap < 0.0)
            return 0.0;
        if (cap > 1e6)
            throw EnumerationTooLarge("knapsack: capacity " + std::to_string(cap));
        std::size_t C = static_cast<std::size_t>(cap);
        std::vector<double> dp(C + 1, 0.0);
        for (std::size_t c = 1; c <= C; ++c) {
            dp[c] = dp[c - 1];
            for (std::size_t j = 0; j < weights.size(); ++j) {
                std::size_t w = static_cast<std::size_t>(weights[j]);
                if (w <= c)
                    dp[c] = std::max(dp[c], dp[c - w] + values[j]);
            }
        }
        return dp[C];
    };
    // LP relaxation of the max-form knapsack: best density times capacity.
    inst.recourse_relaxation = [rho](const Decision&, const Scenario& xi) {
        return rho * std::max(xi[0], 0.0);
    };
    return out;
}

UnitCommitmentInstance build_unit_commitment_toy(std::size_t units, std::size_t periods,
                                                 std::vector<double> gen_cost,
                                                 std::vector<double> p_min,
                                                 std::vector<double> p_max,
                                                 std::vector<double> ramp_up,
                                                 std::vector<double> ramp_down,
                                                 double shed_penalty,
                                                 std::vector<Decision> commitments) {
    if (units == 0 || periods == 0)
        throw Error("unit-commitment: need units and periods");
    if (gen_cost.size() != units || p_min.size() != units || p_max.size() != units ||
        ramp_up.size() != units || ramp_down.size() != units)
        throw DimensionMismatch("unit-commitment: per-unit parameter lengths");
    if (shed_penalty < 0.0)
        throw Error("unit-commitment: shedding penalty must be nonnegative");
    require_bits(commitments, units * periods, "unit-commitment");

    UnitCommitmentInstance out;
    out.units = units;
    out.periods = periods;
    out.gen_cost = gen_cost;
    out.p_min = p_min;
    out.p_max = p_max;
    out.ramp_up = ramp_up;
    out.ramp_down = ramp_down;
    out.shed_penalty = shed_penalty;

    std::size_t U = units, T = periods;
    // Columns: p(U·T), s(T), pmax slack (U·T), pmin surplus (U·T),
    // ramp-up slack (U·(T−1)), ramp-down slack (U·(T−1)).
    std::size_t col_p0 = 0, col_s0 = U * T, col_smax0 = U * T + T,
                col_smin0 = 2 * U * T + T, col_rup0 = 3 * U * T + T,
                col_rdn0 = 3 * U * T + T + U * (T - 1);
    std::size_t ncols = 3 * U * T + T + 2 * U * (T - 1);
    // Rows: balance (T) first so demand duals lead, then pmax, pmin, ramps.
    std::size_t row_bal0 = 0, row_max0 = T, row_min0 = T + U * T, row_rup0 = T + 2 * U * T,
                row_rdn0 = T + 2 * U * T + U * (T - 1);
    std::size_t nrows = T + 2 * U * T + 2 * U * (T - 1);

    auto build_lp = [=](const Decision& u, const Scenario& xi) {
        Matrix W(nrows, ncols);
        std::vector<double> b(nrows, 0.0), q(ncols, 0.0);
        for (std::size_t i = 0; i < U; ++i)
            for (std::size_t t = 0; t < T; ++t)
                q[col_p0 + i * T + t] = gen_cost[i];
        for (std::size_t t = 0; t < T; ++t)
            q[col_s0 + t] = shed_penalty;

        for (std::size_t t = 0; t < T; ++t) {
            for (std::size_t i = 0; i < U; ++i)
                W.at(row_bal0 + t, col_p0 + i * T + t) = 1.0;
            W.at(row_bal0 + t, col_s0 + t) = 1.0;
            b[row_bal0 + t] = xi[t];
        }
        for (std::size_t i = 0; i < U; ++i) {
            for (std::size_t t = 0; t < T; ++t) {
                std::size_t k = i * T + t;
                W.at(row_max0 + k, col_p0 + k) = 1.0;
                W.at(row_max0 + k, col_smax0 + k) = 1.0;
                b[row_max0 + k] = p_max[i] * u[k];
                W.at(row_min0 + k, col_p0 + k) = 1.0;
                W.at(row_min0 + k, col_smin0 + k) = -1.0;
                b[row_min0 + k] = p_min[i] * u[k];
            }
            for (std::size_t t = 1; t < T; ++t) {
                std::size_t r = i * (T - 1) + (t - 1);
                W.at(row_rup0 + r, col_p0 + i * T + t) = 1.0;
                W.at(row_rup0 + r, col_p0 + i * T + t - 1) = -1.0;
                W.at(row_rup0 + r, col_rup0 + r) = 1.0;
                b[row_rup0 + r] = ramp_up[i];
                W.at(row_rdn0 + r, col_p0 + i * T + t) = -1.0;
                W.at(row_rdn0 + r, col_p0 + i * T + t - 1) = 1.0;
                W.at(row_rdn0 + r, col_rdn0 + r) = 1.0;
                b[row_rdn0 + r] = ramp_down[i];
            }
        }
        return LinearProgram{q, W, b};
    };

    TwoStageInstance& inst = out.instance;
    inst.name = "unit-commitment";
    inst.dim = periods;
    inst.recourse = RecourseKind::Continuous;
    inst.candidates = std::move(commitments);
    inst.first_stage_cost = [](const Decision&) { return 0.0; };
    inst.recourse_oracle = [build_lp](const Decision& u, const Scenario& xi) {
        LpSolution s = solve(build_lp(u, xi));
        if (s.status != LpStatus::Optimal)
            throw InfeasibleRecourse("unit-commitment: dispatch LP not optimal");
        return s.objective_value;
    };
    inst.recourse_relaxation = inst.recourse_oracle;
    inst.scenario_duals = [build_lp, T](const Decision& u, const Scenario& xi) {
        LpSolution s = solve(build_lp(u, xi));
        if (s.status != LpStatus::Optimal)
            throw InfeasibleRecourse("unit-commitment: dispatch LP not optimal");
        return std::vector<double>(s.dual.begin(), s.dual.begin() + static_cast<std::ptrdiff_t>(T));
    };
    return out;
}

NetworkDesignInstance build_network_design_toy(std::size_t nodes,
                                               std::vector<std::pair<std::size_t, std::size_t>> arcs,
                                               std::vector<double> arc_cost,
                                               std::vector<double> capacity,
                                               AffineVectorMap demand_map,
                                               std::vector<Decision> opening_candidates) {
    std::size_t V = nodes, A = arcs.size();
    if (V == 0 || A == 0)
        throw Error("network-design: need nodes and arcs");
    if (arc_cost.size() != A || capacity.size() != A)
        throw DimensionMismatch("network-design: one cost and capacity per arc");
    for (auto [tail, head] : arcs)
        if (tail >= V || head >= V || tail == head)
            throw Error("network-design: bad arc endpoints");
    if (demand_map.A.rows() != V || demand_map.b.size() != V)
        throw DimensionMismatch("network-design: demand map must produce one value per node");
    for (double u : capacity)
        if (u < 0.0)
            throw Error("network-design: capacities must be nonnegative");
    require_bits(opening_candidates, A, "network-design");

    NetworkDesignInstance out;
    out.nodes = nodes;
    out.arcs = arcs;
    out.arc_cost = arc_cost;
    out.capacity = capacity;
    out.demand_map = demand_map;

    // Columns: flows y (A) then capacity slacks (A). Rows: conservation (V)
    // first so node-price duals lead, then capacity rows y_a + s_a = u_a x_a.
    auto build_lp = [=](const Decision& x, const Scenario& xi) {
        Matrix W(V + A, 2 * A);
        std::vector<double> b(V + A, 0.0), q(2 * A, 0.0);
        std::vector<double> d = demand_map(xi);
        for (std::size_t a = 0; a < A; ++a) {
            q[a] = arc_cost[a];
            W.at(arcs[a].second, a) = 1.0;  // inflow at the head
            W.at(arcs[a].first, a) = -1.0;  // outflow at the tail
            W.at(V + a, a) = 1.0;
            W.at(V + a, A + a) = 1.0;
            b[V + a] = capacity[a] * x[a];
        }
        for (std::size_t v = 0; v < V; ++v)
            b[v] = d[v];
        return LinearProgram{q, W, b};
    };

    TwoStageInstance& inst = out.instance;
    inst.name = "network-design";
    inst.dim = demand_map.A.cols();
    inst.recourse = RecourseKind::Milp;
    inst.candidates = std::move(opening_candidates);
    inst.first_stage_cost = [](const Decision&) { return 0.0; };
    inst.recourse_oracle = [build_lp, capacity, demand_map, A](const Decision& x,
                                                               const Scenario& xi) {
        std::vector<double> d = demand_map(xi);
        double total_sink = 0.0;
        for (double v : d)
            total_sink += std::max(v, 0.0);
        std::vector<std::size_t> ivars(A);
        std::vector<std::pair<std::int64_t, std::int64_t>> box(A);
        for (std::size_t a = 0; a < A; ++a) {
            ivars[a] = a;
            double hi = std::min(capacity[a] * x[a], total_sink);
            box[a] = {0, static_cast<std::int64_t>(std::floor(hi + 1e-9))};
        }
        LpSolution s = milp_solve_bruteforce(build_lp(x, xi), ivars, box);
        if (s.status != LpStatus::Optimal)
            throw InfeasibleRecourse("network-design: no integer routing");
        return s.objective_value;
    };
    inst.recourse_relaxation = [build_lp](const Decision& x, const Scenario& xi) {
        LpSolution s = solve(build_lp(x, xi));
        if (s.status != LpStatus::Optimal)
            throw InfeasibleRecourse("network-design: relaxation not optimal");
        return s.objective_value;
    };
    inst.scenario_duals = [build_lp, V](const Decision& x, const Scenario& xi) {
        LpSolution s = solve(build_lp(x, xi));
        if (s.status != LpStatus::Optimal)
            throw InfeasibleRecourse("network-design: relaxation not optimal");
        return std::vector<double>(s.dual.begin(), s.dual.begin() + static_cast<std::ptrdiff_t>(V));
    };
    return out;
}

} // namespace pdot
