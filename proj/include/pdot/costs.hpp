#pragma once

#include <optional>
#include <vector>

#include "pdot/otsolve.hpp"
#include "pdot/problems.hpp"

namespace pdot {

using Support = std::vector<Scenario>;

/// c(xi, xi') = ‖xi − xi'‖ (Euclidean).
CostMatrix cost_norm(const Support& from, const Support& to);

/**
 * @brief Bertsimas-Mundru cost c_BM(xi, xi') = Q(x*(xi'), xi) − Q(x*(xi), xi)
 * + α‖xi − xi'‖ with x*(xi) the lowest-index argmin of g + Q.
 *
 * α = 0 is accepted (the regularizer guarantees positivity off the
 * diagonal but the worked examples set α = 0). The regret term uses the
 * min-form Q; with a nonzero first-stage cost it can go negative, which
 * the CostMatrix invariant rejects, so BM costs are built on g ≡ 0
 * instances.
 */
CostMatrix cost_bm(const TwoStageInstance& instance, const Support& from, const Support& to,
                   double alpha);

/// Symmetrized BM: c_S = ½[c_BM(xi, xi') + c_BM(xi', xi)] over one support.
CostMatrix cost_bm_symmetrized(const TwoStageInstance& instance, const Support& support,
                               double alpha);

/// c_avg = (1/K) Σ_k |Q(x_k, xi) − Q(x_k, xi')| over a decision panel.
CostMatrix cost_avg_regret(const TwoStageInstance& instance, const std::vector<Decision>& panel,
                           const Support& support);

/**
 * @brief Composite cost α‖Δxi‖ + β_w·‖x*(xi) − x*(xi')‖ + γ_w·[BM regret term].
 *
 * The BM component enters without its own regularizer; the composite's α
 * term is the baseline scenario distance. α > 0, β_w, γ_w ≥ 0.
 */
CostMatrix cost_composite(const TwoStageInstance& instance, const Support& support,
                          double alpha, double beta_w, double gamma_w);

/// c_LP = M_π·[‖h(xi)−h(xi')‖₁ + R·‖T(xi)−T(xi')‖₁] (entrywise 1-norm on ΔT).
CostMatrix cost_lp_sensitivity(const AffineVectorMap& h_map, const AffineMatrixMap& T_map,
                               double M_pi, double R, const Support& support);

/// c_MILP = c_LP form + γ̂ off the diagonal; diagonal forced to 0. Tainted.
CostMatrix cost_milp_gap(const AffineVectorMap& h_map, const AffineMatrixMap& T_map,
                         double M_pi, double R, double gamma_hat, const Support& support);

enum class CflCostMode { Max, Min };

/// c_CFL = Σ_j c̄_j·|xi_j − xi'_j| with c̄_j the max (or min) assignment cost.
CostMatrix cost_cfl(const CflInstance& instance, const Support& support, CflCostMode mode);

enum class KnapsackCostMode { Stepwise, Linear };

/**
 * @brief Knapsack capacity cost. Stepwise: ρ·g·(⌊max/g⌋ − ⌊min/g⌋) with
 * g = gcd(w), ρ = max v_j/w_j; linear: ρ·|xi − xi'|.
 */
CostMatrix cost_knapsack(const std::vector<std::int64_t>& weights,
                         const std::vector<double>& values, const Support& support,
                         KnapsackCostMode mode);

/// c_UC = Σ_t π̄_t·|xi_t − xi'_t| over demand paths. Tainted (π̄ estimated).
CostMatrix cost_unit_commitment(const std::vector<double>& pi_bar, const Support& support);

/// c_ND = Σ_v π̄_v·|d_v(xi) − d_v(xi')| with node demands d(xi). Tainted.
CostMatrix cost_network_design(const std::vector<double>& pi_bar,
                               const AffineVectorMap& demand_map, const Support& support);

/**
 * @brief Empirical dual bounds π̄ = max over (x, xi) grid of |scenario-row
 * duals|, for the UC/ND costs. An estimate of the true sup, not a
 * certified bound.
 */
std::vector<double> estimate_dual_bounds(const TwoStageInstance& instance,
                                         const Support& grid);

struct TriangleViolation {
    std::size_t i = 0, j = 0, k = 0;
    double lhs = 0.0; // c(i,k)
    double rhs = 0.0; // c(i,j) + c(j,k)
};

struct GroundCostReport {
    bool nonnegative = true;
    bool proper = false;       // some finite entry
    bool square = false;
    bool zero_diagonal = true; // vacuous when not square
    bool symmetric = false;
    bool triangle_holds = true;
    std::optional<TriangleViolation> violation;
};

/**
 * @brief Checks the ground-cost axioms on a finite support and probes the
 * triangle inequality exhaustively, reporting a violating triple if any.
 */
GroundCostReport validate_ground_cost(const CostMatrix& C);

} // namespace pdot
