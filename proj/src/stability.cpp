#include "pdot/stability.hpp"

#include <cmath>
#include <limits>

namespace pdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double scaled_bound(double beta, double transport) {
    return transport == kInf ? kInf : beta * transport;
}

} // namespace

UnionSupport union_support(const DiscreteDistribution& P, const DiscreteDistribution& nu) {
    if (P.dim() != nu.dim())
        throw DimensionMismatch("union support: marginals of dim " + std::to_string(P.dim()) +
                                " and " + std::to_string(nu.dim()));
    UnionSupport u;
    u.atoms = P.atoms();
    u.index_p.resize(P.size());
    for (std::size_t i = 0; i < P.size(); ++i)
        u.index_p[i] = i;
    u.index_nu.resize(nu.size());
    for (std::size_t j = 0; j < nu.size(); ++j) {
        std::size_t pos = u.atoms.size();
        for (std::size_t k = 0; k < u.atoms.size(); ++k)
            if (u.atoms[k] == nu.atom(j)) {
                pos = k;
                break;
            }
        if (pos == u.atoms.size())
            u.atoms.push_back(nu.atom(j));
        u.index_nu[j] = pos;
    }
    return u;
}

StabilityReport check_stability(const TwoStageInstance& instance, const DiscreteDistribution& P,
                                const DiscreteDistribution& nu, const CostMatrix& C_union,
                                const UnionSupport& support,
                                const DominationCertificate& certificate, double tol) {
    if (support.index_p.size() != P.size() || support.index_nu.size() != nu.size())
        throw SupportMismatch("stability: union index maps do not match the marginals");
    if (C_union.rows() != support.atoms.size() || C_union.cols() != support.atoms.size())
        throw SupportMismatch("stability: cost is " + std::to_string(C_union.rows()) + "x" +
                              std::to_string(C_union.cols()) + " but the union has " +
                              std::to_string(support.atoms.size()) + " atoms");
    for (std::size_t i = 0; i < P.size(); ++i)
        if (!(support.atoms[support.index_p[i]] == P.atom(i)))
            throw SupportMismatch("stability: P atom " + std::to_string(i) +
                                  " maps to a different union atom");
    for (std::size_t j = 0; j < nu.size(); ++j)
        if (!(support.atoms[support.index_nu[j]] == nu.atom(j)))
            throw SupportMismatch("stability: nu atom " + std::to_string(j) +
                                  " maps to a different union atom");
    if (!certificate.violations.empty())
        throw CertificateMissing("stability: certificate carries " +
                                 std::to_string(certificate.violations.size()) +
                                 " domination violations");

    StabilityReport rep;
    rep.beta = certificate.beta_hat;
    rep.taint = C_union.estimate_tainted() ? Taint::Estimate : Taint::Exact;
    rep.v_P = expected_value(instance, P).value;
    rep.v_nu = expected_value(instance, nu).value;

    std::vector<double> fwd(P.size() * nu.size());
    std::vector<double> bwd(nu.size() * P.size());
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j) {
            fwd[i * nu.size() + j] = C_union.at(support.index_p[i], support.index_nu[j]);
            bwd[j * P.size() + i] = C_union.at(support.index_nu[j], support.index_p[i]);
        }
    rep.T_PQ = transport_cost(P, nu, CostMatrix(P.size(), nu.size(), std::move(fwd),
                                                C_union.estimate_tainted()))
                   .cost;
    rep.T_QP = transport_cost(nu, P, CostMatrix(nu.size(), P.size(), std::move(bwd),
                                                C_union.estimate_tainted()))
                   .cost;

    rep.lhs_forward = rep.v_P - rep.v_nu;
    rep.lhs_backward = rep.v_nu - rep.v_P;
    rep.bound_forward = scaled_bound(rep.beta, rep.T_PQ);
    rep.bound_backward = scaled_bound(rep.beta, rep.T_QP);
    rep.pass_forward = rep.lhs_forward <= rep.bound_forward + tol;
    rep.pass_backward = rep.lhs_backward <= rep.bound_backward + tol;
    double abs_bound = std::max(rep.bound_forward, rep.bound_backward);
    rep.pass_abs = std::abs(rep.v_P - rep.v_nu) <= abs_bound + tol;
    rep.pass = rep.pass_forward && rep.pass_backward && rep.pass_abs;
    return rep;
}

StabilityReport check_symmetric_shortcut(const TwoStageInstance& instance,
                                         const DiscreteDistribution& P,
                                         const DiscreteDistribution& nu,
                                         const CostMatrix& C_union, const UnionSupport& support,
                                         const DominationCertificate& certificate, double tol) {
    if (!C_union.symmetric_flag())
        throw NotSymmetric("symmetric shortcut: cost is not symmetric over the union");
    StabilityReport rep = check_stability(instance, P, nu, C_union, support, certificate, tol);
    double gap = std::abs(rep.bound_forward - rep.bound_backward);
    bool both_inf = rep.bound_forward == kInf && rep.bound_backward == kInf;
    if (!both_inf && !(gap <= 1e-9))
        throw Error("symmetric shortcut: directed bounds disagree by " + std::to_string(gap));
    return rep;
}

} // namespace pdot
