#pragma once

#include <cstddef>
#include <vector>

#include "pdot/errors.hpp"
#include "pdot/measures.hpp"
#include "pdot/otsolve.hpp"
#include "pdot/problems.hpp"
#include "pdot/regret.hpp"
#include "pdot/stability.hpp"

namespace pdot {

enum class ReductionMethod { Exhaustive, Greedy, SwapLocalSearch };

const char* reduction_method_name(ReductionMethod method);

/**
 * @brief Outcome of replacing P by a distribution on a kept subset of its atoms.
 *
 * Mass moves from each source atom to its cost-nearest kept atom (ties to the
 * lowest kept index); the kept atom's weight is the mass it receives.
 */
struct ReductionResult {
    std::vector<std::size_t> kept;
    DiscreteDistribution reduced;
    double transport_cost;
    ReductionMethod method;
    std::vector<std::size_t> assignment;
};

ReductionResult reduce_exhaustive(const DiscreteDistribution& P, const CostMatrix& C,
                                  std::size_t m);

ReductionResult reduce_greedy(const DiscreteDistribution& P, const CostMatrix& C, std::size_t m);

ReductionResult reduce_local_search(const DiscreteDistribution& P, const CostMatrix& C,
                                    std::size_t m, const ReductionResult& seed,
                                    std::size_t max_iters);

/**
 * @brief End-to-end check that a reduction's value error sits under the certified bound.
 */
struct ReductionAudit {
    ReductionResult result;
    DominationCertificate certificate;
    StabilityReport stability;
    double realized_gap;
    double apriori_bound;
    double redistribution_gap;
    bool directions_disagree;
    bool pass;
};

ReductionAudit reduction_stability_audit(const TwoStageInstance& instance,
                                         const DiscreteDistribution& P, const CostMatrix& C,
                                         std::size_t m, ReductionMethod method,
                                         double tol = 1e-7);

} // namespace pdot
