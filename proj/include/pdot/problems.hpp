#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pdot/errors.hpp"
#include "pdot/lp.hpp"
#include "pdot/matrix.hpp"
#include "pdot/measures.hpp"

namespace pdot {

using Decision = std::vector<double>;

enum class Orientation { MinCost, MaxValue };
enum class RecourseKind { Continuous, Milp };

/// h(xi) = A·xi + b.
struct AffineVectorMap {
    Matrix A;
    std::vector<double> b;
    std::vector<double> operator()(const Scenario& xi) const;
};

/// T(xi) = T0 + sum_k xi_k · Tk.
struct AffineMatrixMap {
    Matrix T0;
    std::vector<Matrix> Tk;
    Matrix operator()(const Scenario& xi) const;
};

/**
 * @brief Two-stage instance: finite candidate set X, first-stage cost g,
 * and the recourse oracle Q(x, xi).
 *
 * Max-form second stages (knapsack) carry Orientation::MaxValue; the
 * recourse oracle reports the raw max-value while the regret and value
 * machinery works on the negation so the min-form theory applies
 * uniformly. recourse_relaxation (optional) reports the raw LP-relaxation
 * value with the same orientation. scenario_duals (optional) reports the
 * duals of the scenario-linked rows, used for empirical price bounds.
 */
struct TwoStageInstance {
    std::string name;
    std::size_t dim = 1;
    RecourseKind recourse = RecourseKind::Continuous;
    Orientation orientation = Orientation::MinCost;
    std::vector<Decision> candidates;
    std::function<double(const Decision&)> first_stage_cost;
    std::function<double(const Decision&, const Scenario&)> recourse_oracle;
    std::function<double(const Decision&, const Scenario&)> recourse_relaxation;
    std::function<std::vector<double>(const Decision&, const Scenario&)> scenario_duals;
};

/// Raw Q(x, xi) from the instance oracle (max-value for MaxValue form).
double second_stage(const TwoStageInstance& instance, const Decision& x, const Scenario& xi);

/// Min-form recourse: Q for MinCost instances, −Q for MaxValue ones.
double second_stage_minform(const TwoStageInstance& instance, const Decision& x,
                            const Scenario& xi);

/// Index into candidates of argmin_x g(x) + Q_minform(x, xi), lowest index wins ties.
std::size_t optimal_first_stage(const TwoStageInstance& instance, const Scenario& xi);

struct ExpectedValueResult {
    double value = 0.0;
    std::size_t minimizer = 0;
};

/// v(P) = min_x g(x) + E_P[Q_minform(x, xi)], exact sum over atoms.
ExpectedValueResult expected_value(const TwoStageInstance& instance,
                                   const DiscreteDistribution& P);

struct NewsvendorInstance {
    TwoStageInstance instance;
    double order_cost = 0.0;
    double holding = 0.0;
    double penalty = 0.0;
    // Fixed-recourse form min{h u + p v : u − v = x − xi}.
    Matrix W{1, 2, {1.0, -1.0}};
    std::vector<double> q;
    double M_pi = 0.0;
};

/// Q(x, xi) = h·max(x−xi, 0) + p·max(xi−x, 0), g(x) = c·x, X a demand grid.
NewsvendorInstance build_newsvendor(double order_cost, double holding, double penalty,
                                    const std::vector<double>& x_grid);

struct FixedRecourseLpInstance {
    TwoStageInstance instance;
    std::vector<double> q;
    Matrix W;
    AffineVectorMap h_map;
    AffineMatrixMap T_map;
    double M_pi = 0.0;   // dual_inf_norm_bound(W, q)
    double R = 0.0;      // max over X of the decision sup-norm
};

/// Q(x, xi) = min{qᵀz : Wz = h(xi) − T(xi)x, z ≥ 0} via the simplex.
FixedRecourseLpInstance build_fixed_recourse_lp(std::vector<double> q, Matrix W,
                                                AffineVectorMap h_map, AffineMatrixMap T_map,
                                                std::vector<Decision> candidates);

struct CflInstance {
    TwoStageInstance instance;
    Matrix assignment_costs; // facilities × customers
    std::vector<double> capacities;
};

/**
 * @brief Single-sourcing CFL: each customer served entirely by one open
 * facility; Q by exhaustive assignment enumeration (|open|^|customers|,
 * capped at 10^6). Candidates are facility-opening bit-vectors.
 */
CflInstance build_cfl_single_source(Matrix assignment_costs, std::vector<double> capacities,
                                    std::vector<Decision> opening_candidates);

struct KnapsackInstance {
    TwoStageInstance instance;
    std::vector<std::int64_t> weights;
    std::vector<double> values;
    double rho = 0.0;   // max_j v_j / w_j
    std::int64_t g = 1; // gcd of the weights
};

/**
 * @brief Unbounded integer knapsack with uncertain capacity xi, max-form.
 * X is a singleton (no first-stage decision); Q by dynamic programming
 * over integer capacity ⌊xi⌋.
 */
KnapsackInstance build_unbounded_knapsack(std::vector<std::int64_t> weights,
                                          std::vector<double> values);

struct UnitCommitmentInstance {
    TwoStageInstance instance;
    std::size_t units = 0;
    std::size_t periods = 0;
    std::vector<double> gen_cost;
    std::vector<double> p_min;
    std::vector<double> p_max;
    std::vector<double> ramp_up;
    std::vector<double> ramp_down;
    double shed_penalty = 0.0;
};

/**
 * @brief Toy unit commitment: given commitments u (bit-vector, unit-major
 * layout u[i·T+t]), dispatch an LP with load shedding. Scenario is the
 * demand path (dim = periods); balance-row duals come first in
 * scenario_duals. Ramp limits bind between consecutive periods.
 */
UnitCommitmentInstance build_unit_commitment_toy(std::size_t units, std::size_t periods,
                                                 std::vector<double> gen_cost,
                                                 std::vector<double> p_min,
                                                 std::vector<double> p_max,
                                                 std::vector<double> ramp_up,
                                                 std::vector<double> ramp_down,
                                                 double shed_penalty,
                                                 std::vector<Decision> commitments);

struct NetworkDesignInstance {
    TwoStageInstance instance;
    std::size_t nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> arcs; // (tail, head)
    std::vector<double> arc_cost;
    std::vector<double> capacity;
    AffineVectorMap demand_map; // net inflow per node; sinks positive
};

/**
 * @brief Single-commodity network design with integer flows. Candidates
 * are arc-opening bit-vectors; Q via integer-box enumeration plus the
 * continuous remainder, recourse_relaxation via the plain LP. Node
 * conservation uses the net-inflow convention (sinks positive, sources
 * negative); conservation-row duals come first in scenario_duals.
 */
NetworkDesignInstance build_network_design_toy(std::size_t nodes,
                                               std::vector<std::pair<std::size_t, std::size_t>> arcs,
                                               std::vector<double> arc_cost,
                                               std::vector<double> capacity,
                                               AffineVectorMap demand_map,
                                               std::vector<Decision> opening_candidates);

} // namespace pdot
