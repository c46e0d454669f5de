#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "helpers.hpp"
#include "pdot/stability.hpp"

using namespace pdot;
using pdot::testing::Rng;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Scenario s1(double x) { return Scenario({x}); }

} // namespace

TEST_CASE("union support keeps P order and appends the new atoms") {
    auto P = make_distribution({s1(1.0), s1(2.0)}, {0.5, 0.5});
    auto nu = make_distribution({s1(2.0), s1(3.0)}, {0.25, 0.75});
    UnionSupport u = union_support(P, nu);
    REQUIRE(u.atoms.size() == 3);
    CHECK(u.atoms[0] == s1(1.0));
    CHECK(u.atoms[1] == s1(2.0));
    CHECK(u.atoms[2] == s1(3.0));
    CHECK(u.index_p == std::vector<std::size_t>{0, 1});
    CHECK(u.index_nu == std::vector<std::size_t>{1, 2});

    auto flat = make_distribution({Scenario({1.0, 2.0})}, {1.0});
    CHECK_THROWS_AS(union_support(P, flat), DimensionMismatch);
}

TEST_CASE("stability bound is tight on the worked inventory example") {
    NewsvendorInstance nv = pdot::testing::newsvendor_toy(1.0, 1.0, {12.0, 18.0});
    auto P = make_distribution({s1(10.0), s1(20.0)}, {0.5, 0.5});
    auto nu = make_distribution({s1(10.0)}, {1.0});
    UnionSupport u = union_support(P, nu);
    CostMatrix C = cost_bm(nv.instance, u.atoms, u.atoms, 0.0);
    DominationCertificate cert = certify_domination(regret_matrix(nv.instance, u.atoms), C);
    REQUIRE(cert.violations.empty());
    CHECK(cert.beta_hat == doctest::Approx(1.0).epsilon(1e-12));

    StabilityReport rep = check_stability(nv.instance, P, nu, C, u, cert);
    CHECK(rep.v_P == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(rep.v_nu == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.T_PQ == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(rep.T_QP == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(rep.lhs_forward == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.bound_forward == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(rep.pass_forward);
    CHECK(rep.pass_backward);
    CHECK(rep.pass_abs);
    CHECK(rep.pass);
    CHECK(rep.taint == Taint::Exact);

    // Tightness: halving beta must break the forward direction.
    DominationCertificate weak = cert;
    weak.beta_hat *= 0.5;
    StabilityReport broken = check_stability(nv.instance, P, nu, C, u, weak);
    CHECK(!broken.pass_forward);
    CHECK(!broken.pass);
}

TEST_CASE("asymmetric cost separates the two transport directions") {
    NewsvendorInstance nv = pdot::testing::newsvendor_toy(1.0, 3.0, {12.0, 18.0});
    auto P = make_distribution({s1(20.0)}, {1.0});
    auto nu = make_distribution({s1(10.0)}, {1.0});
    UnionSupport u = union_support(P, nu);
    REQUIRE(u.atoms.size() == 2); // order: 20 first, then 10
    CostMatrix C = cost_bm(nv.instance, u.atoms, u.atoms, 0.0);
    CHECK(C.at(0, 1) == doctest::Approx(18.0).epsilon(1e-12)); // 20 → 10
    CHECK(C.at(1, 0) == doctest::Approx(6.0).epsilon(1e-12));  // 10 → 20

    DominationCertificate cert = certify_domination(regret_matrix(nv.instance, u.atoms), C);
    REQUIRE(cert.violations.empty());
    StabilityReport rep = check_stability(nv.instance, P, nu, C, u, cert);
    CHECK(rep.T_PQ == doctest::Approx(18.0).epsilon(1e-9));
    CHECK(rep.T_QP == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(rep.v_P == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(rep.v_nu == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.pass);

    CHECK_THROWS_AS(check_symmetric_shortcut(nv.instance, P, nu, C, u, cert), NotSymmetric);
}

TEST_CASE("symmetric shortcut agrees with the two-sided check") {
    NewsvendorInstance nv = pdot::testing::newsvendor_toy(1.0, 1.0, {12.0, 18.0});
    auto P = make_distribution({s1(10.0), s1(20.0)}, {0.5, 0.5});
    auto nu = make_distribution({s1(10.0), s1(20.0)}, {0.9, 0.1});
    UnionSupport u = union_support(P, nu);
    CostMatrix C = cost_bm_symmetrized(nv.instance, u.atoms, 0.0);
    REQUIRE(C.symmetric_flag());
    DominationCertificate cert = certify_domination(regret_matrix(nv.instance, u.atoms), C);
    REQUIRE(cert.violations.empty());

    StabilityReport rep = check_symmetric_shortcut(nv.instance, P, nu, C, u, cert);
    CHECK(rep.pass);
    CHECK(rep.bound_forward == doctest::Approx(rep.bound_backward).epsilon(1e-12));
}

TEST_CASE("identical marginals give a zero-everything report") {
    NewsvendorInstance nv = pdot::testing::newsvendor_toy(1.0, 1.0, {12.0, 18.0});
    auto P = make_distribution({s1(10.0), s1(20.0)}, {0.3, 0.7});
    UnionSupport u = union_support(P, P);
    CostMatrix C = cost_bm(nv.instance, u.atoms, u.atoms, 0.0);
    DominationCertificate cert = certify_domination(regret_matrix(nv.instance, u.atoms), C);
    StabilityReport rep = check_stability(nv.instance, P, P, C, u, cert);
    CHECK(rep.lhs_forward == 0.0);
    CHECK(std::abs(rep.T_PQ) <= 1e-12);
    CHECK(std::abs(rep.T_QP) <= 1e-12);
    CHECK(rep.pass);
}

TEST_CASE("certificate violations block the stability check") {
    NewsvendorInstance nv = pdot::testing::newsvendor_toy(1.0, 1.0, {12.0, 18.0});
    auto P = make_distribution({s1(10.0), s1(20.0)}, {0.5, 0.5});
    auto nu = make_distribution({s1(10.0)}, {1.0});
    UnionSupport u = union_support(P, nu);
    CostMatrix zeros(2, 2, std::vector<double>(4, 0.0));
    DominationCertificate bad = certify_domination(regret_matrix(nv.instance, u.atoms), zeros);
    REQUIRE(!bad.violations.empty());
    CHECK_THROWS_AS(check_stability(nv.instance, P, nu, zeros, u, bad), CertificateMissing);
}

TEST_CASE("stability rejects a cost that does not match the union") {
    NewsvendorInstance nv = pdot::testing::newsvendor_toy(1.0, 1.0, {12.0, 18.0});
    auto P = make_distribution({s1(10.0), s1(20.0)}, {0.5, 0.5});
    auto nu = make_distribution({s1(10.0)}, {1.0});
    UnionSupport u = union_support(P, nu);
    DominationCertificate cert; // clean, empty certificate
    CHECK_THROWS_AS(
        check_stability(nv.instance, P, nu, CostMatrix(3, 3, std::vector<double>(9, 1.0)), u,
                        cert),
        SupportMismatch);

    UnionSupport twisted = u;
    std::swap(twisted.index_p[0], twisted.index_p[1]);
    CostMatrix C = cost_bm(nv.instance, u.atoms, u.atoms, 0.0);
    CHECK_THROWS_AS(check_stability(nv.instance, P, nu, C, twisted, cert), SupportMismatch);
}

TEST_CASE("tainted costs mark the report as an estimate") {
    UnitCommitmentInstance uc = pdot::testing::uc_toy();
    auto P = make_distribution({Scenario({3.0, 4.0}), Scenario({2.0, 1.0})}, {0.5, 0.5});
    auto nu = make_distribution({Scenario({3.0, 4.0})}, {1.0});
    UnionSupport u = union_support(P, nu);
    std::vector<double> pi_bar = estimate_dual_bounds(uc.instance, u.atoms);
    CostMatrix C = cost_unit_commitment(pi_bar, u.atoms);
    REQUIRE(C.estimate_tainted());
    DominationCertificate cert = certify_domination(regret_matrix(uc.instance, u.atoms), C);
    REQUIRE(cert.violations.empty());
    StabilityReport rep = check_stability(uc.instance, P, nu, C, u, cert);
    CHECK(rep.taint == Taint::Estimate);
    CHECK(rep.pass);
}

TEST_CASE("infinite transport makes the bound vacuous") {
    NewsvendorInstance nv = pdot::testing::newsvendor_toy(1.0, 1.0, {12.0, 18.0});
    auto P = make_distribution({s1(10.0)}, {1.0});
    auto nu = make_distribution({s1(20.0)}, {1.0});
    UnionSupport u = union_support(P, nu);
    CostMatrix C(2, 2, {0.0, kInf, 6.0, 0.0});
    DominationCertificate cert = certify_domination(regret_matrix(nv.instance, u.atoms), C);
    REQUIRE(cert.violations.empty());
    StabilityReport rep = check_stability(nv.instance, P, nu, C, u, cert);
    CHECK(rep.T_PQ == kInf);
    CHECK(rep.bound_forward == kInf);
    CHECK(rep.pass_forward);
    CHECK(rep.pass);
}

TEST_CASE("seeded stability sweep over inventory tuples") {
    Rng rng(431);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x_grid;
        for (int k = 0; k < 3; ++k)
            x_grid.push_back(rng.uniform(5.0, 25.0));
        NewsvendorInstance nv =
            pdot::testing::newsvendor_toy(rng.uniform(0.5, 2.0), rng.uniform(0.5, 4.0), x_grid);
        auto P = pdot::testing::random_distribution(rng, 4, 1, 0.0, 30.0);
        auto nu = pdot::testing::random_distribution(rng, 3, 1, 0.0, 30.0);
        UnionSupport u = union_support(P, nu);
        CostMatrix C = cost_bm(nv.instance, u.atoms, u.atoms, 1.0);
        DominationCertificate cert =
            certify_domination(regret_matrix(nv.instance, u.atoms), C);
        REQUIRE(cert.violations.empty());
        StabilityReport report = check_stability(nv.instance, P, nu, C, u, cert);
        CHECK(report.pass_forward);
        CHECK(report.pass_backward);
        CHECK(report.pass_abs);
    }
}
