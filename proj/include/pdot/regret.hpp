#pragma once

#include <string>
#include <vector>

#include "pdot/costs.hpp"
#include "pdot/otsolve.hpp"
#include "pdot/problems.hpp"

namespace pdot {

/// R[i][j] = sup_{x∈X} [Q(x, xi_i) − Q(x, xi_j)] in min-form over one support.
struct RegretMatrix {
    std::size_t n = 0;
    std::vector<double> entries;

    double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

RegretMatrix regret_matrix(const TwoStageInstance& instance, const Support& support);

struct DominationCertificate {
    double beta_hat = 0.0;
    std::size_t argmax_i = 0;
    std::size_t argmax_j = 0;
    std::vector<std::pair<std::size_t, std::size_t>> violations; // R > 0 with c = 0
    std::string convention_notes;
};

/**
 * @brief Smallest β with R ≤ β·c over all pairs: beta_hat = max of
 * max(R,0)/c. Pairs with R ≤ 0 contribute nothing; R > 0 against c = 0 is
 * a violation (no finite β); R > 0 against c = +∞ contributes nothing.
 */
DominationCertificate certify_domination(const RegretMatrix& R, const CostMatrix& C);

struct LpDominationReport {
    bool pass = false;
    std::size_t pairs = 0;
    double worst_violation = 0.0; // max over pairs of R − c_LP
    double min_slack = 0.0;
    double mean_slack = 0.0;
};

/// Asserts R ≤ c_LP + 1e-7 pairwise on a fixed-recourse LP instance (β = 1).
LpDominationReport verify_lp_sensitivity_domination(const FixedRecourseLpInstance& instance,
                                                    const Support& support);

struct CflDominationReport {
    bool pass = false;
    std::size_t pairs = 0;
    double worst_violation = 0.0;
    bool tightness_attained = false; // equality within 1e-9 somewhere
};

/// Asserts |Q(y,xi)−Q(y,xi')| ≤ Σ_j c̄_j|Δxi_j| for every candidate y.
CflDominationReport verify_cfl_domination(const CflInstance& instance, const Support& support,
                                          CflCostMode mode);

/**
 * @brief γ̂ = max over candidates × grid of the min-form integrality gap
 * Q − Q_relaxation. A grid estimate (lower bound) of the true sup.
 */
double estimate_integrality_gap(const TwoStageInstance& instance, const Support& grid);

} // namespace pdot
