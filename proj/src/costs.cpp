#include "pdot/costs.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace pdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dims(const Support& support, std::size_t dim, const char* what) {
    if (support.empty())
        throw DimensionMismatch(std::string(what) + ": empty support");
    for (const Scenario& s : support)
        if (s.dim() != dim)
            throw DimensionMismatch(std::string(what) + ": scenario dim " +
                                    std::to_string(s.dim()) + ", expected " +
                                    std::to_string(dim));
}

/// x*(xi) and Q(x, xi) tables for the BM family, one sweep per support.
struct BmTables {
    std::vector<std::size_t> xstar;
    // q[k][i] = Q_minform(candidate k, atom i)
    std::vector<std::vector<double>> q;
};

BmTables bm_tables(const TwoStageInstance& instance, const Support& support) {
    BmTables t;
    std::size_t K = instance.candidates.size();
    t.q.assign(K, std::vector<double>(support.size()));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < support.size(); ++i)
            t.q[k][i] = second_stage_minform(instance, instance.candidates[k], support[i]);
    t.xstar.resize(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        std::size_t best = 0;
        double best_value = kInf;
        for (std::size_t k = 0; k < K; ++k) {
            double v = instance.first_stage_cost(instance.candidates[k]) + t.q[k][i];
            if (v < best_value) {
                best_value = v;
                best = k;
            }
        }
        t.xstar[i] = best;
    }
    return t;
}

} // namespace

CostMatrix cost_norm(const Support& from, const Support& to) {
    if (from.empty() || to.empty())
        throw DimensionMismatch("norm cost: empty support");
    check_dims(to, from.front().dim(), "norm cost");
    std::vector<double> e(from.size() * to.size());
    for (std::size_t i = 0; i < from.size(); ++i)
        for (std::size_t j = 0; j < to.size(); ++j)
            e[i * to.size() + j] = norm2(from[i], to[j]);
    return CostMatrix(from.size(), to.size(), std::move(e));
}

CostMatrix cost_bm(const TwoStageInstance& instance, const Support& from, const Support& to,
                   double alpha) {
    if (alpha < 0.0)
        throw Error("bm cost: alpha must be nonnegative");
    check_dims(from, instance.dim, "bm cost");
    check_dims(to, instance.dim, "bm cost");

    // One union sweep covers both supports.
    Support all(from);
    std::vector<std::size_t> to_idx;
    for (const Scenario& s : to) {
        std::size_t pos = all.size();
        for (std::size_t i = 0; i < all.size(); ++i)
            if (all[i] == s) {
                pos = i;
                break;
            }
        if (pos == all.size())
            all.push_back(s);
        to_idx.push_back(pos);
    }
    BmTables t = bm_tables(instance, all);

    std::vector<double> e(from.size() * to.size());
    for (std::size_t i = 0; i < from.size(); ++i)
        for (std::size_t j = 0; j < to.size(); ++j) {
            std::size_t jj = to_idx[j];
            double regret = t.q[t.xstar[jj]][i] - t.q[t.xstar[i]][i];
            e[i * to.size() + j] = regret + alpha * norm2(from[i], to[j]);
        }
    return CostMatrix(from.size(), to.size(), std::move(e));
}

CostMatrix cost_bm_symmetrized(const TwoStageInstance& instance, const Support& support,
                               double alpha) {
    CostMatrix bm = cost_bm(instance, support, support, alpha);
    std::size_t n = support.size();
    std::vector<double> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            e[i * n + j] = 0.5 * (bm.at(i, j) + bm.at(j, i));
    return CostMatrix(n, n, std::move(e));
}

CostMatrix cost_avg_regret(const TwoStageInstance& instance, const std::vector<Decision>& panel,
                           const Support& support) {
    if (panel.empty())
        throw Error("average regret cost: empty decision panel");
    check_dims(support, instance.dim, "average regret cost");
    std::size_t n = support.size();
    std::vector<std::vector<double>> q(panel.size(), std::vector<double>(n));
    for (std::size_t k = 0; k < panel.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            q[k][i] = second_stage_minform(instance, panel[k], support[i]);
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < panel.size(); ++k)
                s += std::abs(q[k][i] - q[k][j]);
            e[i * n + j] = s / static_cast<double>(panel.size());
        }
    return CostMatrix(n, n, std::move(e));
}

CostMatrix cost_composite(const TwoStageInstance& instance, const Support& support,
                          double alpha, double beta_w, double gamma_w) {
    if (!(alpha > 0.0) || beta_w < 0.0 || gamma_w < 0.0)
        throw Error("composite cost: need alpha > 0 and nonnegative weights");
    check_dims(support, instance.dim, "composite cost");
    BmTables t = bm_tables(instance, support);
    std::size_t n = support.size();
    std::vector<double> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Decision& xi_star = instance.candidates[t.xstar[i]];
            const Decision& xj_star = instance.candidates[t.xstar[j]];
            double dx = 0.0;
            for (std::size_t k = 0; k < xi_star.size(); ++k)
                dx += (xi_star[k] - xj_star[k]) * (xi_star[k] - xj_star[k]);
            double regret = t.q[t.xstar[j]][i] - t.q[t.xstar[i]][i];
            e[i * n + j] = alpha * norm2(support[i], support[j]) + beta_w * std::sqrt(dx) +
                           gamma_w * regret;
        }
    return CostMatrix(n, n, std::move(e));
}

CostMatrix cost_lp_sensitivity(const AffineVectorMap& h_map, const AffineMatrixMap& T_map,
                               double M_pi, double R, const Support& support) {
    if (M_pi < 0.0 || R < 0.0)
        throw Error("lp sensitivity cost: M_pi and R must be nonnegative");
    if (!std::isfinite(M_pi))
        throw Error("lp sensitivity cost: M_pi must be finite");
    check_dims(support, h_map.A.cols(), "lp sensitivity cost");
    std::size_t n = support.size();
    std::vector<std::vector<double>> h(n);
    std::vector<Matrix> T(n);
    for (std::size_t i = 0; i < n; ++i) {
        h[i] = h_map(support[i]);
        T[i] = T_map(support[i]);
    }
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double dh = 0.0;
            for (std::size_t r = 0; r < h[i].size(); ++r)
                dh += std::abs(h[i][r] - h[j][r]);
            double dT = 0.0;
            for (std::size_t k = 0; k < T[i].data().size(); ++k)
                dT += std::abs(T[i].data()[k] - T[j].data()[k]);
            e[i * n + j] = M_pi * (dh + R * dT);
        }
    return CostMatrix(n, n, std::move(e));
}

CostMatrix cost_milp_gap(const AffineVectorMap& h_map, const AffineMatrixMap& T_map,
                         double M_pi, double R, double gamma_hat, const Support& support) {
    if (gamma_hat < 0.0)
        throw Error("milp gap cost: gamma estimate must be nonnegative");
    CostMatrix base = cost_lp_sensitivity(h_map, T_map, M_pi, R, support);
    std::size_t n = support.size();
    std::vector<double> e(base.entries());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                e[i * n + j] += gamma_hat;
    for (std::size_t i = 0; i < n; ++i)
        e[i * n + i] = 0.0;
    return CostMatrix(n, n, std::move(e), true);
}

CostMatrix cost_cfl(const CflInstance& instance, const Support& support, CflCostMode mode) {
    const Matrix& c = instance.assignment_costs;
    check_dims(support, c.cols(), "cfl cost");
    std::size_t J = c.cols();
    std::vector<double> cbar(J);
    for (std::size_t j = 0; j < J; ++j) {
        double v = c.at(0, j);
        for (std::size_t i = 1; i < c.rows(); ++i)
            v = mode == CflCostMode::Max ? std::max(v, c.at(i, j)) : std::min(v, c.at(i, j));
        cbar[j] = v;
    }
    std::size_t n = support.size();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < J; ++k)
                s += cbar[k] * std::abs(support[i][k] - support[j][k]);
            e[i * n + j] = s;
        }
    return CostMatrix(n, n, std::move(e));
}

CostMatrix cost_knapsack(const std::vector<std::int64_t>& weights,
                         const std::vector<double>& values, const Support& support,
                         KnapsackCostMode mode) {
    if (weights.empty() || weights.size() != values.size())
        throw DimensionMismatch("knapsack cost: weights and values must pair up");
    check_dims(support, 1, "knapsack cost");
    std::int64_t g = weights.front();
    double rho = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        if (weights[j] < 1)
            throw Error("knapsack cost: weights must be positive integers");
        g = std::gcd(g, weights[j]);
        rho = std::max(rho, values[j] / static_cast<double>(weights[j]));
    }
    std::size_t n = support.size();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double a = support[i][0], b = support[j][0];
            if (mode == KnapsackCostMode::Linear) {
                e[i * n + j] = rho * std::abs(a - b);
            } else {
                double gd = static_cast<double>(g);
                double steps = std::floor(std::max(a, b) / gd) - std::floor(std::min(a, b) / gd);
                e[i * n + j] = rho * gd * steps;
            }
        }
    return CostMatrix(n, n, std::move(e));
}

CostMatrix cost_unit_commitment(const std::vector<double>& pi_bar, const Support& support) {
    check_dims(support, pi_bar.size(), "unit commitment cost");
    for (double p : pi_bar)
        if (p < 0.0 || !std::isfinite(p))
            throw Error("unit commitment cost: price bounds must be finite and nonnegative");
    std::size_t n = support.size();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < pi_bar.size(); ++t)
                s += pi_bar[t] * std::abs(support[i][t] - support[j][t]);
            e[i * n + j] = s;
        }
    return CostMatrix(n, n, std::move(e), true);
}

CostMatrix cost_network_design(const std::vector<double>& pi_bar,
                               const AffineVectorMap& demand_map, const Support& support) {
    if (pi_bar.size() != demand_map.A.rows())
        throw DimensionMismatch("network design cost: one price bound per node");
    check_dims(support, demand_map.A.cols(), "network design cost");
    for (double p : pi_bar)
        if (p < 0.0 || !std::isfinite(p))
            throw Error("network design cost: price bounds must be finite and nonnegative");
    std::size_t n = support.size();
    std::vector<std::vector<double>> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = demand_map(support[i]);
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t v = 0; v < pi_bar.size(); ++v)
                s += pi_bar[v] * std::abs(d[i][v] - d[j][v]);
            e[i * n + j] = s;
        }
    return CostMatrix(n, n, std::move(e), true);
}

std::vector<double> estimate_dual_bounds(const TwoStageInstance& instance,
                                         const Support& grid) {
    if (!instance.scenario_duals)
        throw Error(instance.name + ": instance exposes no scenario duals");
    if (grid.empty())
        throw DimensionMismatch("dual bound estimation: empty grid");
    std::vector<double> bounds;
    for (const Decision& x : instance.candidates) {
        for (const Scenario& xi : grid) {
            std::vector<double> duals = instance.scenario_duals(x, xi);
            if (bounds.empty())
                bounds.assign(duals.size(), 0.0);
            if (duals.size() != bounds.size())
                throw DimensionMismatch("dual bound estimation: ragged dual vectors");
            for (std::size_t t = 0; t < duals.size(); ++t)
                bounds[t] = std::max(bounds[t], std::abs(duals[t]));
        }
    }
    return bounds;
}

GroundCostReport validate_ground_cost(const CostMatrix& C) {
    GroundCostReport rep;
    rep.nonnegative = true; // enforced by construction
    rep.square = C.rows() == C.cols();
    rep.symmetric = C.symmetric_flag();
    for (double v : C.entries())
        if (v < kInf) {
            rep.proper = true;
            break;
        }
    if (rep.square) {
        for (std::size_t i = 0; i < C.rows(); ++i)
            if (C.at(i, i) != 0.0)
                rep.zero_diagonal = false;
        for (std::size_t i = 0; i < C.rows() && rep.triangle_holds; ++i)
            for (std::size_t k = 0; k < C.rows() && rep.triangle_holds; ++k)
                for (std::size_t j = 0; j < C.rows(); ++j) {
                    if (C.at(i, k) > C.at(i, j) + C.at(j, k) + 1e-9) {
                        rep.triangle_holds = false;
                        rep.violation =
                            TriangleViolation{i, j, k, C.at(i, k), C.at(i, j) + C.at(j, k)};
                        break;
                    }
                }
    }
    return rep;
}

} // namespace pdot
