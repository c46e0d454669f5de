#include "pdot/otsolve.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "pdot/lp.hpp"

namespace pdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_entry(double v) {
    if (v == kInf)
        return "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries,
                       bool estimate_tainted)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), tainted_(estimate_tainted) {
    if (entries_.size() != rows_ * cols_)
        throw ShapeMismatch("cost matrix " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " with " +
                            std::to_string(entries_.size()) + " entries");
    for (double e : entries_) {
        if (std::isnan(e) || e < 0.0)
            throw ShapeMismatch("cost entries must be in [0, +inf]");
    }
    symmetric_ = rows_ == cols_;
    if (symmetric_) {
        for (std::size_t i = 0; i < rows_ && symmetric_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) {
                    symmetric_ = false;
                    break;
                }
    }
}

CostMatrix CostMatrix::transposed() const {
    std::vector<double> e(entries_.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            e[j * rows_ + i] = at(i, j);
    return CostMatrix(cols_, rows_, std::move(e), tainted_);
}

std::string CostMatrix::to_text() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j)
                out += ' ';
            out += fmt_entry(at(i, j));
        }
        out += '\n';
    }
    return out;
}

TransportPlan transport_cost(const DiscreteDistribution& P, const DiscreteDistribution& Q,
                             const CostMatrix& C) {
    if (C.rows() != P.size() || C.cols() != Q.size())
        throw ShapeMismatch("cost matrix " + std::to_string(C.rows()) + "x" +
                            std::to_string(C.cols()) + " vs supports " +
                            std::to_string(P.size()) + "/" + std::to_string(Q.size()));

    // Zero-weight atoms are dropped and restored as zero rows/columns.
    std::vector<std::size_t> src, dst;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (P.weight(i) > 0.0)
            src.push_back(i);
    for (std::size_t j = 0; j < Q.size(); ++j)
        if (Q.weight(j) > 0.0)
            dst.push_back(j);

    // Variables are the finite-cost arcs only.
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (std::size_t a = 0; a < src.size(); ++a)
        for (std::size_t b = 0; b < dst.size(); ++b)
            if (C.at(src[a], dst[b]) < kInf)
                arcs.emplace_back(a, b);

    TransportPlan infeasible;
    infeasible.cost = kInf;

    if (arcs.empty())
        return infeasible;

    std::size_t r = src.size(), c = dst.size();
    Matrix A(r + c, arcs.size());
    std::vector<double> obj(arcs.size());
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        auto [a, b] = arcs[k];
        A.at(a, k) = 1.0;
        A.at(r + b, k) = 1.0;
        obj[k] = C.at(src[a], dst[b]);
    }
    std::vector<double> rhs(r + c);
    for (std::size_t a = 0; a < r; ++a)
        rhs[a] = P.weight(src[a]);
    for (std::size_t b = 0; b < c; ++b)
        rhs[r + b] = Q.weight(dst[b]);

    LpSolution sol = solve(LinearProgram{obj, A, rhs});
    if (sol.status != LpStatus::Optimal)
        return infeasible;

    TransportPlan plan;
    plan.rows = P.size();
    plan.cols = Q.size();
    plan.plan.assign(P.size() * Q.size(), 0.0);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        double v = sol.primal[k];
        if (v < 0.0)
            v = 0.0;
        plan.plan[src[arcs[k].first] * Q.size() + dst[arcs[k].second]] = v;
    }
    plan.cost = sol.objective_value;
    if (plan.cost < 0.0)
        plan.cost = 0.0;
    return plan;
}

double wasserstein_p(const DiscreteDistribution& P, const DiscreteDistribution& Q, double p) {
    if (P.dim() != Q.dim())
        throw DimensionMismatch("supports of dim " + std::to_string(P.dim()) + " and " +
                                std::to_string(Q.dim()));
    if (!(p >= 1.0))
        throw InvalidOrder("Wasserstein order p = " + std::to_string(p));

    std::vector<double> entries(P.size() * Q.size());
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = 0; j < Q.size(); ++j)
            entries[i * Q.size() + j] = std::pow(norm2(P.atom(i), Q.atom(j)), p);
    TransportPlan plan = transport_cost(P, Q, CostMatrix(P.size(), Q.size(), entries));
    return std::pow(plan.cost, 1.0 / p);
}

double fm1_lower_bound(const DiscreteDistribution& P, const DiscreteDistribution& Q,
                       const std::function<double(const Scenario&)>& f) {
    if (P.dim() != Q.dim())
        throw DimensionMismatch("supports of dim " + std::to_string(P.dim()) + " and " +
                                std::to_string(Q.dim()));

    std::vector<const Scenario*> support;
    for (std::size_t i = 0; i < P.size(); ++i)
        support.push_back(&P.atom(i));
    for (std::size_t j = 0; j < Q.size(); ++j)
        support.push_back(&Q.atom(j));

    std::vector<double> vals(support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
        vals[i] = f(*support[i]);

    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            double gap = std::abs(vals[i] - vals[j]);
            double dist = norm2(*support[i], *support[j]);
            if (gap > dist + 1e-9)
                throw LipschitzViolation("witness varies by " + std::to_string(gap) +
                                         " over distance " + std::to_string(dist));
        }

    double ep = 0.0, eq = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
        ep += P.weight(i) * vals[i];
    for (std::size_t j = 0; j < Q.size(); ++j)
        eq += Q.weight(j) * vals[P.size() + j];
    return std::abs(ep - eq);
}

} // namespace pdot
