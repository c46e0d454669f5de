#include "pdot/regret.hpp"

#include <cmath>
#include <limits>

namespace pdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

RegretMatrix regret_matrix(const TwoStageInstance& instance, const Support& support) {
    if (support.empty())
        throw DimensionMismatch("regret matrix: empty support");
    std::size_t n = support.size();
    std::size_t K = instance.candidates.size();
    std::vector<std::vector<double>> q(K, std::vector<double>(n));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < n; ++i)
            q[k][i] = second_stage_minform(instance, instance.candidates[k], support[i]);

    RegretMatrix R;
    R.n = n;
    R.entries.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            double best = -kInf;
            for (std::size_t k = 0; k < K; ++k)
                best = std::max(best, q[k][i] - q[k][j]);
            R.entries[i * n + j] = best;
        }
    return R;
}

DominationCertificate certify_domination(const RegretMatrix& R, const CostMatrix& C) {
    if (C.rows() != R.n || C.cols() != R.n)
        throw ShapeMismatch("certificate: cost " + std::to_string(C.rows()) + "x" +
                            std::to_string(C.cols()) + " vs regret over " +
                            std::to_string(R.n) + " atoms");
    DominationCertificate cert;
    cert.convention_notes =
        "beta_hat = max over pairs of max(R,0)/c; R <= 0 contributes 0; "
        "R > 0 with c = 0 is a violation; R > 0 with c = +inf contributes 0";
    for (std::size_t i = 0; i < R.n; ++i)
        for (std::size_t j = 0; j < R.n; ++j) {
            double r = R.at(i, j);
            if (r <= 1e-9)
                continue;
            double c = C.at(i, j);
            if (c == 0.0) {
                cert.violations.emplace_back(i, j);
                continue;
            }
            if (c == kInf)
                continue;
            double ratio = r / c;
            if (ratio > cert.beta_hat) {
                cert.beta_hat = ratio;
                cert.argmax_i = i;
                cert.argmax_j = j;
            }
        }
    return cert;
}

LpDominationReport verify_lp_sensitivity_domination(const FixedRecourseLpInstance& instance,
                                                    const Support& support) {
    RegretMatrix R = regret_matrix(instance.instance, support);
    CostMatrix C = cost_lp_sensitivity(instance.h_map, instance.T_map, instance.M_pi,
                                       instance.R, support);
    LpDominationReport rep;
    rep.pass = true;
    rep.worst_violation = -kInf;
    rep.min_slack = kInf;
    double slack_sum = 0.0;
    for (std::size_t i = 0; i < R.n; ++i)
        for (std::size_t j = 0; j < R.n; ++j) {
            if (i == j)
                continue;
            double diff = R.at(i, j) - C.at(i, j);
            rep.worst_violation = std::max(rep.worst_violation, diff);
            rep.min_slack = std::min(rep.min_slack, -diff);
            slack_sum += -diff;
            ++rep.pairs;
            if (diff > 1e-7)
                rep.pass = false;
        }
    if (rep.pairs == 0) {
        rep.worst_violation = 0.0;
        rep.min_slack = 0.0;
    } else {
        rep.mean_slack = slack_sum / static_cast<double>(rep.pairs);
    }
    return rep;
}

CflDominationReport verify_cfl_domination(const CflInstance& instance, const Support& support,
                                          CflCostMode mode) {
    CostMatrix C = cost_cfl(instance, support, mode);
    CflDominationReport rep;
    rep.pass = true;
    rep.worst_violation = -kInf;
    for (const Decision& y : instance.instance.candidates) {
        std::vector<double> q(support.size());
        for (std::size_t i = 0; i < support.size(); ++i)
            q[i] = second_stage(instance.instance, y, support[i]);
        for (std::size_t i = 0; i < support.size(); ++i)
            for (std::size_t j = 0; j < support.size(); ++j) {
                if (i == j)
                    continue;
                double diff = std::abs(q[i] - q[j]) - C.at(i, j);
                rep.worst_violation = std::max(rep.worst_violation, diff);
                if (diff > 1e-7)
                    rep.pass = false;
                if (std::abs(diff) <= 1e-9)
                    rep.tightness_attained = true;
                ++rep.pairs;
            }
    }
    if (rep.pairs == 0)
        rep.worst_violation = 0.0;
    return rep;
}

double estimate_integrality_gap(const TwoStageInstance& instance, const Support& grid) {
    if (!instance.recourse_relaxation)
        throw Error(instance.name + ": instance exposes no relaxation oracle");
    if (grid.empty())
        throw DimensionMismatch("integrality gap estimation: empty grid");
    double gamma = 0.0;
    for (const Decision& x : instance.candidates) {
        for (const Scenario& xi : grid) {
            double q = second_stage(instance, x, xi);
            double relax = instance.recourse_relaxation(x, xi);
            double gap = instance.orientation == Orientation::MaxValue ? relax - q : q - relax;
            gamma = std::max(gamma, gap);
        }
    }
    return gamma;
}

} // namespace pdot
