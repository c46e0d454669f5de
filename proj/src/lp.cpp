#include "pdot/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pdot {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const LinearProgram& lp) {
    std::size_t m = lp.eq_matrix.rows();
    std::size_t n = lp.eq_matrix.cols();
    if (lp.objective.size() != n)
        throw DimensionMismatch("objective length " + std::to_string(lp.objective.size()) +
                                " vs " + std::to_string(n) + " columns");
    if (lp.rhs.size() != m)
        throw DimensionMismatch("rhs length " + std::to_string(lp.rhs.size()) + " vs " +
                                std::to_string(m) + " rows");
    for (double v : lp.objective)
        if (!std::isfinite(v))
            throw DimensionMismatch("non-finite objective entry");
    for (double v : lp.rhs)
        if (!std::isfinite(v))
            throw DimensionMismatch("non-finite rhs entry");
    for (double v : lp.eq_matrix.data())
        if (!std::isfinite(v))
            throw DimensionMismatch("non-finite constraint entry");
}

/// Dense simplex tableau. Row m is the objective row holding reduced
/// costs; its rhs cell holds minus the current objective value.
struct Tableau {
    std::size_t m = 0;
    std::size_t width = 0; // columns excluding rhs
    std::vector<double> a; // (m+1) × (width+1)
    std::vector<std::size_t> basis;

    double& at(std::size_t i, std::size_t j) { return a[i * (width + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * (width + 1) + j]; }
    double& rhs(std::size_t i) { return a[i * (width + 1) + width]; }
    double rhs(std::size_t i) const { return a[i * (width + 1) + width]; }

    void pivot(std::size_t r, std::size_t c) {
        double p = at(r, c);
        for (std::size_t j = 0; j <= width; ++j)
            at(r, j) /= p;
        at(r, c) = 1.0;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == r)
                continue;
            double f = at(i, c);
            if (f == 0.0)
                continue;
            for (std::size_t j = 0; j <= width; ++j)
                at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        basis[r] = c;
    }
};

/// Bland's rule: entering column is the lowest eligible index, leaving row
/// breaks ratio ties by lowest basic variable index. Returns Optimal when
/// no reduced cost is negative, Unbounded when a column has no blocking row.
LpStatus run_simplex(Tableau& t, const std::vector<bool>& can_enter, std::size_t iter_cap) {
    for (std::size_t iter = 0; iter < iter_cap; ++iter) {
        std::size_t enter = t.width;
        for (std::size_t j = 0; j < t.width; ++j) {
            if (can_enter[j] && t.at(t.m, j) < -kPivotTol) {
                enter = j;
                break;
            }
        }
        if (enter == t.width)
            return LpStatus::Optimal;

        std::size_t leave = t.m;
        double best_ratio = kInf;
        for (std::size_t i = 0; i < t.m; ++i) {
            double coef = t.at(i, enter);
            if (coef > kPivotTol) {
                double ratio = t.rhs(i) / coef;
                if (ratio < best_ratio - kPivotTol ||
                    (ratio < best_ratio + kPivotTol &&
                     (leave == t.m || t.basis[i] < t.basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == t.m)
            return LpStatus::Unbounded;
        t.pivot(leave, enter);
    }
    throw CyclingGuardExceeded("simplex iteration cap " + std::to_string(iter_cap) + " hit");
}

LpSolution solve_no_rows(const LinearProgram& lp) {
    LpSolution sol;
    for (double v : lp.objective) {
        if (v < -kPivotTol) {
            sol.status = LpStatus::Unbounded;
            sol.objective_value = -kInf;
            return sol;
        }
    }
    sol.status = LpStatus::Optimal;
    sol.primal.assign(lp.objective.size(), 0.0);
    sol.objective_value = 0.0;
    return sol;
}

} // namespace

LpSolution solve(const LinearProgram& lp) {
    validate(lp);
    std::size_t m = lp.eq_matrix.rows();
    std::size_t n = lp.eq_matrix.cols();
    if (m == 0)
        return solve_no_rows(lp);

    // Flip rows with negative rhs so phase 1 can start from the artificial
    // basis; duals of flipped rows are negated on report.
    std::vector<double> sign(m, 1.0);
    Tableau t;
    t.m = m;
    t.width = n + m;
    t.a.assign((m + 1) * (t.width + 1), 0.0);
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
        sign[i] = s;
        for (std::size_t j = 0; j < n; ++j)
            t.at(i, j) = s * lp.eq_matrix.at(i, j);
        t.at(i, n + i) = 1.0;
        t.rhs(i) = s * lp.rhs[i];
        t.basis[i] = n + i;
    }

    // Phase 1: minimize the sum of artificials.
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            s += t.at(i, j);
        t.at(m, j) = -s;
    }
    double bsum = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        bsum += t.rhs(i);
    t.rhs(m) = -bsum;

    std::size_t iter_cap = 50 * (m + n);
    std::vector<bool> enter_any(t.width, true);
    LpStatus st = run_simplex(t, enter_any, iter_cap);
    if (st != LpStatus::Optimal || -t.rhs(m) > kFeasTol) {
        LpSolution sol;
        sol.status = LpStatus::Infeasible;
        sol.objective_value = kInf;
        return sol;
    }

    // Drive artificials out of the basis; rows that cannot pivot on any
    // structural column are redundant and get dropped (dual 0).
    std::vector<std::size_t> row_origin(m);
    for (std::size_t i = 0; i < m; ++i)
        row_origin[i] = i;
    for (std::size_t r = 0; r < t.m;) {
        if (t.basis[r] < n) {
            ++r;
            continue;
        }
        std::size_t piv = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(t.at(r, j)) > kPivotTol) {
                piv = j;
                break;
            }
        }
        if (piv < n) {
            t.pivot(r, piv);
            ++r;
        } else {
            // Remove tableau row r in place.
            for (std::size_t i = r; i + 1 < t.m; ++i) {
                for (std::size_t j = 0; j <= t.width; ++j)
                    t.a[i * (t.width + 1) + j] = t.a[(i + 1) * (t.width + 1) + j];
                t.basis[i] = t.basis[i + 1];
                row_origin[i] = row_origin[i + 1];
            }
            for (std::size_t j = 0; j <= t.width; ++j)
                t.a[(t.m - 1) * (t.width + 1) + j] = t.a[t.m * (t.width + 1) + j];
            t.m -= 1;
            t.basis.resize(t.m);
            row_origin.resize(t.m);
            t.a.resize((t.m + 1) * (t.width + 1));
        }
    }

    if (t.m == 0) {
        LinearProgram free_lp{lp.objective, Matrix(0, n), {}};
        LpSolution sol = solve_no_rows(free_lp);
        if (sol.status == LpStatus::Optimal)
            sol.dual.assign(m, 0.0);
        return sol;
    }

    // Phase 2 objective row from the original costs over the current basis.
    for (std::size_t j = 0; j <= t.width; ++j) {
        double cj = j < n ? lp.objective[j] : 0.0;
        double zj = 0.0;
        for (std::size_t i = 0; i < t.m; ++i) {
            double cb = t.basis[i] < n ? lp.objective[t.basis[i]] : 0.0;
            zj += cb * t.at(i, j);
        }
        if (j < t.width)
            t.at(t.m, j) = cj - zj;
        else
            t.rhs(t.m) = -zj;
    }

    // Artificial columns stay for dual extraction but may not re-enter.
    std::vector<bool> enter_structural(t.width, false);
    for (std::size_t j = 0; j < n; ++j)
        enter_structural[j] = true;
    st = run_simplex(t, enter_structural, iter_cap);

    LpSolution sol;
    sol.status = st;
    if (st == LpStatus::Unbounded) {
        sol.objective_value = -kInf;
        return sol;
    }

    sol.primal.assign(n, 0.0);
    for (std::size_t i = 0; i < t.m; ++i)
        if (t.basis[i] < n)
            sol.primal[t.basis[i]] = t.rhs(i);
    sol.objective_value = -t.rhs(t.m);

    // π_k = −(reduced cost of artificial k); flipped rows negate again.
    sol.dual.assign(m, 0.0);
    for (std::size_t r = 0; r < t.m; ++r) {
        std::size_t orig = row_origin[r];
        sol.dual[orig] = sign[orig] * -t.at(t.m, n + orig);
    }
    return sol;
}

double dual_inf_norm_bound(const Matrix& W, const std::vector<double>& q) {
    std::size_t m = W.rows();
    std::size_t n = W.cols();
    if (q.size() != n)
        throw DimensionMismatch("q length " + std::to_string(q.size()) + " vs " +
                                std::to_string(n) + " columns");
    if (m == 0)
        return 0.0;

    // Constraints Wᵀπ ≤ q with π free: π = u − v, slack s, so
    // Wᵀu − Wᵀv + s = q with u, v, s ≥ 0. n rows, 2m+n columns.
    Matrix A(n, 2 * m + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            A.at(i, k) = W.at(k, i);
            A.at(i, m + k) = -W.at(k, i);
        }
        A.at(i, 2 * m + i) = 1.0;
    }

    double best = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        for (double dir : {1.0, -1.0}) {
            std::vector<double> obj(2 * m + n, 0.0);
            obj[k] = -dir;
            obj[m + k] = dir;
            LpSolution s = solve(LinearProgram{obj, A, q});
            if (s.status == LpStatus::Infeasible)
                throw DualInfeasible("dual polytope is empty");
            if (s.status == LpStatus::Unbounded)
                return kInf;
            best = std::max(best, -s.objective_value);
        }
    }
    return best;
}

LpSolution milp_solve_bruteforce(const LinearProgram& lp,
                                 const std::vector<std::size_t>& integer_vars,
                                 const std::vector<std::pair<std::int64_t, std::int64_t>>& box,
                                 std::uint64_t enumeration_cap) {
    validate(lp);
    if (integer_vars.size() != box.size())
        throw DimensionMismatch("integer_vars and box lengths differ");
    if (integer_vars.empty())
        return solve(lp);

    std::size_t m = lp.eq_matrix.rows();
    std::size_t n = lp.eq_matrix.cols();
    for (std::size_t v : integer_vars)
        if (v >= n)
            throw DimensionMismatch("integer variable index out of range");

    std::uint64_t combos = 1;
    for (auto [lo, hi] : box) {
        if (hi < lo)
            throw DimensionMismatch("empty integer box");
        std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
        if (combos > enumeration_cap / width)
            throw EnumerationTooLarge("integer box exceeds cap " +
                                      std::to_string(enumeration_cap));
        combos *= width;
    }

    std::vector<bool> is_int(n, false);
    for (std::size_t v : integer_vars)
        is_int[v] = true;
    std::vector<std::size_t> cont;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_int[j])
            cont.push_back(j);

    Matrix Wc(m, cont.size());
    std::vector<double> qc(cont.size());
    for (std::size_t jj = 0; jj < cont.size(); ++jj) {
        qc[jj] = lp.objective[cont[jj]];
        for (std::size_t i = 0; i < m; ++i)
            Wc.at(i, jj) = lp.eq_matrix.at(i, cont[jj]);
    }

    LpSolution best;
    best.status = LpStatus::Infeasible;
    best.objective_value = std::numeric_limits<double>::infinity();

    std::vector<std::int64_t> assign(integer_vars.size());
    for (std::size_t i = 0; i < assign.size(); ++i)
        assign[i] = box[i].first;

    while (true) {
        bool nonneg_ok = true;
        for (std::int64_t v : assign)
            if (v < 0)
                nonneg_ok = false;
        if (nonneg_ok) {
            double fixed_cost = 0.0;
            std::vector<double> b2(lp.rhs);
            for (std::size_t i = 0; i < assign.size(); ++i) {
                double v = static_cast<double>(assign[i]);
                fixed_cost += lp.objective[integer_vars[i]] * v;
                for (std::size_t r = 0; r < m; ++r)
                    b2[r] -= lp.eq_matrix.at(r, integer_vars[i]) * v;
            }
            LpSolution inner;
            if (cont.empty()) {
                bool feas = true;
                for (double r : b2)
                    if (std::abs(r) > kFeasTol)
                        feas = false;
                inner.status = feas ? LpStatus::Optimal : LpStatus::Infeasible;
                inner.objective_value = feas ? 0.0 : kInf;
                inner.dual.assign(m, 0.0);
            } else {
                inner = solve(LinearProgram{qc, Wc, b2});
            }
            if (inner.status == LpStatus::Unbounded) {
                LpSolution sol;
                sol.status = LpStatus::Unbounded;
                sol.objective_value = -kInf;
                return sol;
            }
            if (inner.status == LpStatus::Optimal &&
                fixed_cost + inner.objective_value < best.objective_value) {
                best.status = LpStatus::Optimal;
                best.objective_value = fixed_cost + inner.objective_value;
                best.primal.assign(n, 0.0);
                for (std::size_t i = 0; i < assign.size(); ++i)
                    best.primal[integer_vars[i]] = static_cast<double>(assign[i]);
                for (std::size_t jj = 0; jj < cont.size(); ++jj)
                    best.primal[cont[jj]] = inner.primal[jj];
                best.dual = inner.dual;
            }
        }

        std::size_t k = 0;
        while (k < assign.size() && assign[k] == box[k].second) {
            assign[k] = box[k].first;
            ++k;
        }
        if (k == assign.size())
            break;
        assign[k] += 1;
    }
    return best;
}

} // namespace pdot
