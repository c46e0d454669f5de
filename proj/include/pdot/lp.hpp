#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "pdot/errors.hpp"
#include "pdot/matrix.hpp"

namespace pdot {

/// Equality-form linear program: min qᵀz s.t. Wz = b, z ≥ 0.
struct LinearProgram {
    std::vector<double> objective;
    Matrix eq_matrix;
    std::vector<double> rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> primal;
    std::vector<double> dual;
    double objective_value = 0.0;
};

/**
 * @brief Two-phase primal simplex with Bland's rule.
 *
 * Rows with negative rhs are flipped before phase 1; reported duals refer
 * to the original rows. Redundant rows detected in phase 1 get dual 0.
 * Iteration cap 50·(m+n) per phase; hitting it throws CyclingGuardExceeded.
 */
LpSolution solve(const LinearProgram& lp);

/**
 * @brief M_π = sup{‖π‖_∞ : Wᵀπ ≤ q}, or +∞ if the dual polytope is
 * unbounded in some coordinate.
 *
 * Solved as 2m coordinate LPs (max π_i and max −π_i) with π split into
 * nonnegative parts. Throws DualInfeasible when the polytope is empty.
 */
double dual_inf_norm_bound(const Matrix& W, const std::vector<double>& q);

/**
 * @brief Exact mixed-integer optimum by enumerating the integer box and
 * solving the continuous remainder LP for each assignment.
 *
 * integer_vars[i] indexes a structural variable restricted to the integers
 * of box[i] = [lo, hi]. Throws EnumerationTooLarge when the cartesian box
 * exceeds enumeration_cap.
 */
LpSolution milp_solve_bruteforce(const LinearProgram& lp,
                                 const std::vector<std::size_t>& integer_vars,
                                 const std::vector<std::pair<std::int64_t, std::int64_t>>& box,
                                 std::uint64_t enumeration_cap = 1000000);

} // namespace pdot
