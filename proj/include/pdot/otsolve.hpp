#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdot/errors.hpp"
#include "pdot/measures.hpp"

namespace pdot {

/**
 * @brief Evaluated ground cost c(xi_i, xi'_j) over two supports.
 *
 * Entries live in [0, +inf]; NaN is rejected. symmetric_flag is recomputed
 * from the entries, never trusted from input. estimate_tainted marks costs
 * built from empirical estimates (dual bounds, integrality gaps) whose
 * downstream stability bounds are heuristic.
 */
class CostMatrix {
  public:
    CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries,
               bool estimate_tainted = false);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    const std::vector<double>& entries() const { return entries_; }
    bool symmetric_flag() const { return symmetric_; }
    bool estimate_tainted() const { return tainted_; }

    CostMatrix transposed() const;

    /// Row-major plain text export, `inf` token for +inf entries.
    std::string to_text() const;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
    bool symmetric_ = false;
    bool tainted_ = false;
};

struct TransportPlan {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> plan; // row-major, rows×cols
    double cost = 0.0;

    double at(std::size_t i, std::size_t j) const { return plan[i * cols + j]; }
};

/**
 * @brief Exact transport cost T_c(P, Q) = min over couplings of sum
 * C[i][j]·pi[i][j], via the transportation LP.
 *
 * Infinite-cost entries are excluded variables; if the finite arcs admit
 * no coupling the result has cost +inf and an empty plan. Zero-weight
 * atoms are dropped before the solve and re-inserted as zero rows/columns.
 */
TransportPlan transport_cost(const DiscreteDistribution& P, const DiscreteDistribution& Q,
                             const CostMatrix& C);

/// W_p(P,Q) with the Euclidean ground norm; p ≥ 1 or InvalidOrder.
double wasserstein_p(const DiscreteDistribution& P, const DiscreteDistribution& Q, double p);

/**
 * @brief |∫f dP − ∫f dQ| for a certified 1-Lipschitz f; a lower bound on
 * W_1 by the Fortet-Mourier duality.
 *
 * The Lipschitz witness is checked on every support pair and a violation
 * beyond 1e-9 throws LipschitzViolation.
 */
double fm1_lower_bound(const DiscreteDistribution& P, const DiscreteDistribution& Q,
                       const std::function<double(const Scenario&)>& f);

} // namespace pdot
