#include "pdot/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace pdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_subset_size(std::size_t n, std::size_t m) {
    if (m == 0 || m > n)
        throw DimensionMismatch("reduction: requested " + std::to_string(m) + " atoms out of " +
                                std::to_string(n));
}

void require_square(const DiscreteDistribution& P, const CostMatrix& C) {
    if (C.rows() != P.size() || C.cols() != P.size())
        throw ShapeMismatch("reduction: cost is " + std::to_string(C.rows()) + "x" +
                            std::to_string(C.cols()) + " over " + std::to_string(P.size()) +
                            " atoms");
}

std::size_t nearest_kept(const CostMatrix& C, std::size_t i,
                         const std::vector<std::size_t>& kept) {
    std::size_t arg = kept.front();
    double best = C.at(i, arg);
    for (std::size_t k = 1; k < kept.size(); ++k) {
        double c = C.at(i, kept[k]);
        if (c < best) {
            best = c;
            arg = kept[k];
        }
    }
    return arg;
}

double subset_cost(const DiscreteDistribution& P, const CostMatrix& C,
                   const std::vector<std::size_t>& kept) {
    double total = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        double p = P.weight(i);
        if (p == 0.0)
            continue;
        double best = kInf;
        for (std::size_t j : kept)
            best = std::min(best, C.at(i, j));
        if (best == kInf)
            return kInf;
        total += p * best;
    }
    return total;
}

ReductionResult finalize(const DiscreteDistribution& P, const CostMatrix& C,
                         std::vector<std::size_t> kept, ReductionMethod method) {
    std::sort(kept.begin(), kept.end());
    std::vector<std::size_t> assignment(P.size());
    std::vector<double> received(kept.size(), 0.0);
    double total = 0.0;
    bool infeasible = false;
    for (std::size_t i = 0; i < P.size(); ++i) {
        std::size_t target = nearest_kept(C, i, kept);
        assignment[i] = target;
        double p = P.weight(i);
        if (p == 0.0)
            continue;
        double c = C.at(i, target);
        if (c == kInf)
            infeasible = true;
        else
            total += p * c;
        std::size_t slot =
            std::lower_bound(kept.begin(), kept.end(), target) - kept.begin();
        received[slot] += p;
    }
    Support atoms;
    atoms.reserve(kept.size());
    for (std::size_t j : kept)
        atoms.push_back(P.atom(j));
    return ReductionResult{std::move(kept), make_distribution(atoms, received),
                           infeasible ? kInf : total, method, std::move(assignment)};
}

std::uint64_t binom_capped(std::size_t n, std::size_t m, std::uint64_t cap) {
    std::uint64_t b = 1;
    std::size_t k = std::min(m, n - m);
    for (std::size_t i = 1; i <= k; ++i) {
        b = b * (n - k + i) / i;
        if (b > cap)
            throw TooManySubsets("exhaustive reduction: C(" + std::to_string(n) + "," +
                                 std::to_string(m) + ") exceeds " + std::to_string(cap));
    }
    return b;
}

} // namespace

const char* reduction_method_name(ReductionMethod method) {
    switch (method) {
    case ReductionMethod::Exhaustive:
        return "exhaustive";
    case ReductionMethod::Greedy:
        return "greedy";
    case ReductionMethod::SwapLocalSearch:
        return "swap";
    }
    return "unknown";
}

ReductionResult reduce_exhaustive(const DiscreteDistribution& P, const CostMatrix& C,
                                  std::size_t m) {
    require_square(P, C);
    require_subset_size(P.size(), m);
    binom_capped(P.size(), m, 1000000);

    std::vector<std::size_t> subset(m);
    for (std::size_t i = 0; i < m; ++i)
        subset[i] = i;
    std::vector<std::size_t> best_subset = subset;
    double best_cost = subset_cost(P, C, subset);

    std::size_t n = P.size();
    while (true) {
        std::size_t pos = m;
        while (pos > 0 && subset[pos - 1] == n - m + pos - 1)
            --pos;
        if (pos == 0)
            break;
        ++subset[pos - 1];
        for (std::size_t k = pos; k < m; ++k)
            subset[k] = subset[k - 1] + 1;
        double cost = subset_cost(P, C, subset);
        if (cost < best_cost) {
            best_cost = cost;
            best_subset = subset;
        }
    }
    return finalize(P, C, std::move(best_subset), ReductionMethod::Exhaustive);
}

ReductionResult reduce_greedy(const DiscreteDistribution& P, const CostMatrix& C, std::size_t m) {
    require_square(P, C);
    require_subset_size(P.size(), m);

    std::vector<std::size_t> kept(P.size());
    for (std::size_t i = 0; i < P.size(); ++i)
        kept[i] = i;
    while (kept.size() > m) {
        std::size_t drop_slot = 0;
        double drop_cost = kInf;
        std::vector<std::size_t> trial;
        trial.reserve(kept.size() - 1);
        for (std::size_t s = 0; s < kept.size(); ++s) {
            trial.clear();
            for (std::size_t k = 0; k < kept.size(); ++k)
                if (k != s)
                    trial.push_back(kept[k]);
            double cost = subset_cost(P, C, trial);
            if (cost < drop_cost) {
                drop_cost = cost;
                drop_slot = s;
            }
        }
        kept.erase(kept.begin() + drop_slot);
    }
    return finalize(P, C, std::move(kept), ReductionMethod::Greedy);
}

ReductionResult reduce_local_search(const DiscreteDistribution& P, const CostMatrix& C,
                                    std::size_t m, const ReductionResult& seed,
                                    std::size_t max_iters) {
    require_square(P, C);
    require_subset_size(P.size(), m);
    if (seed.kept.size() != m)
        throw DimensionMismatch("local search: seed keeps " + std::to_string(seed.kept.size()) +
                                " atoms, requested " + std::to_string(m));
    for (std::size_t j : seed.kept)
        if (j >= P.size())
            throw DimensionMismatch("local search: seed index " + std::to_string(j) +
                                    " outside the support");

    std::vector<std::size_t> kept = seed.kept;
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw DimensionMismatch("local search: seed subset repeats an atom");

    std::vector<bool> in_kept(P.size(), false);
    for (std::size_t j : kept)
        in_kept[j] = true;
    double current = subset_cost(P, C, kept);

    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        double best_cost = current;
        std::size_t best_slot = 0;
        std::size_t best_in = 0;
        bool found = false;
        std::vector<std::size_t> trial = kept;
        for (std::size_t s = 0; s < kept.size(); ++s) {
            for (std::size_t cand = 0; cand < P.size(); ++cand) {
                if (in_kept[cand])
                    continue;
                trial[s] = cand;
                double cost = subset_cost(P, C, trial);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_slot = s;
                    best_in = cand;
                    found = true;
                }
            }
            trial[s] = kept[s];
        }
        if (!found)
            break;
        in_kept[kept[best_slot]] = false;
        in_kept[best_in] = true;
        kept[best_slot] = best_in;
        std::sort(kept.begin(), kept.end());
        current = best_cost;
    }
    return finalize(P, C, std::move(kept), ReductionMethod::SwapLocalSearch);
}

ReductionAudit reduction_stability_audit(const TwoStageInstance& instance,
                                         const DiscreteDistribution& P, const CostMatrix& C,
                                         std::size_t m, ReductionMethod method, double tol) {
    ReductionResult result = [&] {
        switch (method) {
        case ReductionMethod::Exhaustive:
            return reduce_exhaustive(P, C, m);
        case ReductionMethod::Greedy:
            return reduce_greedy(P, C, m);
        case ReductionMethod::SwapLocalSearch:
            return reduce_local_search(P, C, m, reduce_greedy(P, C, m), 100);
        }
        throw Error("reduction audit: unknown method");
    }();

    RegretMatrix R = regret_matrix(instance, P.atoms());
    DominationCertificate certificate = certify_domination(R, C);
    UnionSupport support = union_support(P, result.reduced);
    if (support.atoms.size() != P.size())
        throw SupportMismatch("reduction audit: reduced support escaped the original atoms");
    StabilityReport stability =
        check_stability(instance, P, result.reduced, C, support, certificate, tol);

    std::vector<double> fwd(P.size() * result.reduced.size());
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = 0; j < result.reduced.size(); ++j)
            fwd[i * result.reduced.size() + j] =
                C.at(support.index_p[i], support.index_nu[j]);
    double ot = transport_cost(P, result.reduced,
                               CostMatrix(P.size(), result.reduced.size(), std::move(fwd),
                                          C.estimate_tainted()))
                    .cost;
    double redistribution_gap;
    if (ot == kInf && result.transport_cost == kInf)
        redistribution_gap = 0.0;
    else
        redistribution_gap = std::abs(ot - result.transport_cost);

    double lo = std::min(stability.T_PQ, stability.T_QP);
    double hi = std::max(stability.T_PQ, stability.T_QP);
    bool disagree = false;
    if (hi > 0.0 && hi != lo)
        disagree = lo == 0.0 || hi / lo > 2.0;

    double realized = std::abs(stability.v_P - stability.v_nu);
    ReductionAudit audit{std::move(result),
                         std::move(certificate),
                         stability,
                         realized,
                         std::max(stability.bound_forward, stability.bound_backward),
                         redistribution_gap,
                         disagree,
                         stability.pass && redistribution_gap <= 1e-9};
    return audit;
}

} // namespace pdot
