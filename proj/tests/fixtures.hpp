#pragma once

#include <vector>

#include "pdot/problems.hpp"

// Shared toy instances used across the module suites and the acceptance run.
namespace pdot::testing {

/// Inventory toy with zero order cost: Q(x, xi) = h·(x−xi)⁺ + p·(xi−x)⁺.
inline NewsvendorInstance newsvendor_toy(double holding, double penalty,
                                         std::vector<double> x_grid) {
    return build_newsvendor(0.0, holding, penalty, x_grid);
}

/// The same inventory recourse posed as a fixed-recourse LP:
/// min{h u + p v : u − v = x − xi}.
inline FixedRecourseLpInstance newsvendor_as_lp(double holding, double penalty,
                                                std::vector<Decision> candidates) {
    AffineVectorMap h_map{Matrix(1, 1, {-1.0}), {0.0}};
    AffineMatrixMap T_map{Matrix(1, 1, {-1.0}), {Matrix(1, 1, {0.0})}};
    return build_fixed_recourse_lp({holding, penalty}, Matrix(1, 2, {1.0, -1.0}),
                                   std::move(h_map), std::move(T_map), std::move(candidates));
}

/// Two-row LP with ±identity columns (feasible for every right-hand side)
/// and a bounded dual set; the technology matrix moves with xi[0].
inline FixedRecourseLpInstance box_lp_toy() {
    Matrix W(2, 5, {1.0, 0.0, -1.0, 0.0, 1.0, 0.0, 1.0, 0.0, -1.0, 1.0});
    std::vector<double> q{2.0, 3.0, 1.0, 1.0, 2.0};
    AffineVectorMap h_map{Matrix(2, 2, {1.0, 0.0, 0.0, 1.0}), {0.0, 0.0}};
    AffineMatrixMap T_map{Matrix(2, 2, {1.0, 0.0, 0.0, 1.0}),
                          {Matrix(2, 2, {0.2, 0.0, 0.0, 0.0}), Matrix(2, 2)}};
    std::vector<Decision> candidates{{0.0, 0.0}, {1.0, 2.0}, {2.0, 1.0}, {1.0, 1.0}};
    return build_fixed_recourse_lp(std::move(q), std::move(W), std::move(h_map),
                                   std::move(T_map), std::move(candidates));
}

/// 2 facilities × 3 customers, capacities ample for every assignment.
inline CflInstance cfl_ample() {
    Matrix costs(2, 3, {1.0, 4.0, 2.0, 2.0, 3.0, 5.0});
    return build_cfl_single_source(costs, {50.0, 50.0}, {{1.0, 1.0}, {0.0, 1.0}});
}

/// All-open single candidate with ample capacity: the regime where the
/// min-over-facilities bound is valid.
inline CflInstance cfl_all_open() {
    Matrix costs(2, 3, {1.0, 4.0, 2.0, 2.0, 3.0, 5.0});
    return build_cfl_single_source(costs, {50.0, 50.0}, {{1.0, 1.0}});
}

/// Binding capacity on the cheap facility: reassignment cascades break the
/// max-over-facilities bound (negative control for the verifier).
inline CflInstance cfl_binding() {
    Matrix costs(2, 2, {0.0, 0.0, 10.0, 10.0});
    return build_cfl_single_source(costs, {1.0, 50.0}, {{1.0, 1.0}});
}

inline KnapsackInstance knapsack_toy() {
    return build_unbounded_knapsack({6, 9, 15}, {30.0, 36.0, 45.0});
}

/// One unit over two periods with shedding, so recourse is always feasible.
inline UnitCommitmentInstance uc_toy() {
    return build_unit_commitment_toy(1, 2, {10.0}, {0.0}, {5.0}, {5.0}, {5.0}, 100.0,
                                     {{1.0, 1.0}, {1.0, 0.0}});
}

/// Three-node network: direct arc 0→2 (cost 3, cap 2) against the two-hop
/// path 0→1→2 (cost 1+1, cap 5). Demands are integral on the test grids, so
/// the unimodular structure keeps every pivot exact.
inline NetworkDesignInstance nd_toy() {
    AffineVectorMap demand{Matrix(3, 1, {-1.0, 0.0, 1.0}), {0.0, 0.0, 0.0}};
    return build_network_design_toy(3, {{0, 1}, {1, 2}, {0, 2}}, {1.0, 1.0, 3.0},
                                    {5.0, 5.0, 2.0}, std::move(demand),
                                    {{1.0, 1.0, 1.0}, {1.0, 1.0, 0.0}});
}

} // namespace pdot::testing
