#include "pdot/commands.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pdot/regret.hpp"
#include "pdot/stability.hpp"

namespace pdot {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Json json_num(double v) {
    if (std::isinf(v))
        return Json(v > 0 ? "inf" : "-inf");
    return Json(v);
}

std::string fmt_point(const std::vector<double>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += fmt(v[i]);
    }
    s += ")";
    return s;
}

std::string cost_line(const CostSpec& cost) {
    std::string s = cost_kind_name(cost.kind);
    switch (cost.kind) {
    case CostKind::Bm:
    case CostKind::BmSymmetrized:
        s += " (alpha = " + fmt(cost.alpha) + ")";
        break;
    case CostKind::Composite:
        s += " (alpha = " + fmt(cost.alpha) + ", beta = " + fmt(cost.beta_w) +
             ", gamma = " + fmt(cost.gamma_w) + ")";
        break;
    case CostKind::AvgRegret:
        s += " (panel of " + std::to_string(cost.panel.size()) + ")";
        break;
    default:
        break;
    }
    return s;
}

void emit_header(std::string& out, const char* command, const InstanceSpec& spec) {
    out += "pdot ";
    out += command;
    out += " report\n";
    out += "instance: " + spec.name + "\n";
    out += std::string("problem: ") + problem_kind_name(spec.problem) + "\n";
    out += "cost: " + cost_line(spec.cost) + "\n";
}

Json machine_header(const char* command, const InstanceSpec& spec) {
    Json j;
    j["command"] = command;
    j["instance"] = spec.name;
    j["problem"] = problem_kind_name(spec.problem);
    j["cost"] = cost_kind_name(spec.cost.kind);
    return j;
}

/// Union of the marginal with the alternative when one is present.
UnionSupport working_support(const InstanceSpec& spec) {
    if (spec.alternative)
        return union_support(spec.marginal, *spec.alternative);
    return union_support(spec.marginal, spec.marginal);
}

std::string support_line(const InstanceSpec& spec, const UnionSupport& u) {
    std::string s = std::to_string(u.atoms.size()) + " atoms (marginal " +
                    std::to_string(spec.marginal.size());
    if (spec.alternative)
        s += ", alternative " + std::to_string(spec.alternative->size());
    s += ")";
    return s;
}

void emit_certificate(std::string& out, Json& machine, const DominationCertificate& cert) {
    out += "certificate:\n";
    out += "  beta_hat: " + fmt(cert.beta_hat) + "\n";
    out += "  argmax pair: (" + std::to_string(cert.argmax_i) + ", " +
           std::to_string(cert.argmax_j) + ")\n";
    if (cert.violations.empty()) {
        out += "  violations: none\n";
    } else {
        out += "  violations: " + std::to_string(cert.violations.size()) + "\n";
        for (const auto& [i, j] : cert.violations)
            out += "    (" + std::to_string(i) + ", " + std::to_string(j) +
                   "): positive regret against zero cost\n";
    }
    out += "  notes: " + cert.convention_notes + "\n";

    Json c;
    c["beta_hat"] = json_num(cert.beta_hat);
    c["argmax_pair"] = {cert.argmax_i, cert.argmax_j};
    c["violations"] = Json::array();
    for (const auto& [i, j] : cert.violations)
        c["violations"].push_back({i, j});
    machine["certificate"] = std::move(c);
}

void emit_stability(std::string& out, Json& machine, const StabilityReport& rep, double tol) {
    out += "beta_hat: " + fmt(rep.beta) + "\n";
    out += std::string("taint: ") + (rep.taint == Taint::Exact ? "exact" : "estimate") + "\n";
    out += "tolerance: " + fmt(tol) + "\n";
    out += "v(P): " + fmt(rep.v_P) + "\n";
    out += "v(nu): " + fmt(rep.v_nu) + "\n";
    out += "T(P -> nu): " + fmt(rep.T_PQ) + "\n";
    out += "T(nu -> P): " + fmt(rep.T_QP) + "\n";
    out += "forward:  v(P) - v(nu) = " + fmt(rep.lhs_forward) +
           " <= " + fmt(rep.bound_forward) + " : " + (rep.pass_forward ? "pass" : "fail") + "\n";
    out += "backward: v(nu) - v(P) = " + fmt(rep.lhs_backward) +
           " <= " + fmt(rep.bound_backward) + " : " + (rep.pass_backward ? "pass" : "fail") +
           "\n";
    out += "absolute: |v(P) - v(nu)| = " + fmt(std::abs(rep.lhs_forward)) +
           " <= " + fmt(std::max(rep.bound_forward, rep.bound_backward)) + " : " +
           (rep.pass_abs ? "pass" : "fail") + "\n";

    Json s;
    s["beta_hat"] = json_num(rep.beta);
    s["taint"] = rep.taint == Taint::Exact ? "exact" : "estimate";
    s["tolerance"] = json_num(tol);
    s["v_P"] = json_num(rep.v_P);
    s["v_nu"] = json_num(rep.v_nu);
    s["T_P_nu"] = json_num(rep.T_PQ);
    s["T_nu_P"] = json_num(rep.T_QP);
    s["lhs_forward"] = json_num(rep.lhs_forward);
    s["lhs_backward"] = json_num(rep.lhs_backward);
    s["bound_forward"] = json_num(rep.bound_forward);
    s["bound_backward"] = json_num(rep.bound_backward);
    s["pass_forward"] = rep.pass_forward;
    s["pass_backward"] = rep.pass_backward;
    s["pass_abs"] = rep.pass_abs;
    s["pass"] = rep.pass;
    machine["stability"] = std::move(s);
}

void finish(CommandResult& result, std::string verdict_word, Json machine) {
    result.text += "verdict: " + verdict_word + "\n";
    machine["verdict"] = verdict_word;
    result.machine = machine.dump(2) + "\n";
}

double pick_tol(const InstanceSpec& spec, const RunOverrides& overrides) {
    if (overrides.tol)
        return *overrides.tol;
    if (spec.run.tol)
        return *spec.run.tol;
    return 1e-7;
}

} // namespace

CommandResult cmd_solve(const InstanceSpec& spec) {
    BuiltProblem built = build_problem(spec.problem);
    const TwoStageInstance& instance = core_instance(built);
    const DiscreteDistribution& P = spec.marginal;
    ExpectedValueResult ev = expected_value(instance, P);

    CommandResult result;
    emit_header(result.text, "solve", spec);
    Json machine = machine_header("solve", spec);

    result.text += "atoms: " + std::to_string(P.size()) + "\n";
    result.text += "candidates: " + std::to_string(instance.candidates.size()) + "\n";
    result.text += "objective: min-form expected value\n";
    result.text += "v(P): " + fmt(ev.value) + "\n";
    result.text += "minimizer: [" + std::to_string(ev.minimizer) + "] x = " +
                   fmt_point(instance.candidates[ev.minimizer]) + "\n";

    result.text += "expected value by candidate:\n";
    Json cand_rows = Json::array();
    for (std::size_t k = 0; k < instance.candidates.size(); ++k) {
        const Decision& x = instance.candidates[k];
        double total = instance.first_stage_cost ? instance.first_stage_cost(x) : 0.0;
        for (std::size_t i = 0; i < P.size(); ++i)
            total += P.weight(i) * second_stage_minform(instance, x, P.atom(i));
        result.text += "  [" + std::to_string(k) + "] x = " + fmt_point(x) + ": " + fmt(total);
        if (k == ev.minimizer)
            result.text += "  *";
        result.text += "\n";
        Json row;
        row["index"] = k;
        row["x"] = x;
        row["value"] = json_num(total);
        cand_rows.push_back(std::move(row));
    }

    result.text += "atom table (weight, scenario, Q at minimizer):\n";
    Json atom_rows = Json::array();
    const Decision& xhat = instance.candidates[ev.minimizer];
    for (std::size_t i = 0; i < P.size(); ++i) {
        double q = second_stage_minform(instance, xhat, P.atom(i));
        result.text += "  [" + std::to_string(i) + "] w = " + fmt(P.weight(i)) +
                       ", xi = " + fmt_point(P.atom(i).coords) + ", Q = " + fmt(q) + "\n";
        Json row;
        row["index"] = i;
        row["weight"] = json_num(P.weight(i));
        row["xi"] = P.atom(i).coords;
        row["Q"] = json_num(q);
        atom_rows.push_back(std::move(row));
    }

    machine["v_P"] = json_num(ev.value);
    machine["minimizer"] = ev.minimizer;
    machine["candidates"] = std::move(cand_rows);
    machine["atoms"] = std::move(atom_rows);
    finish(result, "ok", std::move(machine));
    return result;
}

CommandResult cmd_regret(const InstanceSpec& spec) {
    BuiltProblem built = build_problem(spec.problem);
    const TwoStageInstance& instance = core_instance(built);
    UnionSupport u = working_support(spec);
    CostMatrix C = build_ground_cost(spec, built, u.atoms);
    RegretMatrix R = regret_matrix(instance, u.atoms);
    DominationCertificate cert = certify_domination(R, C);

    CommandResult result;
    emit_header(result.text, "regret", spec);
    Json machine = machine_header("regret", spec);

    result.text += "support: " + support_line(spec, u) + "\n";
    result.text += "regret matrix (min-form, rows = xi, cols = xi'):\n";
    Json rows = Json::array();
    for (std::size_t i = 0; i < R.n; ++i) {
        result.text += " ";
        Json row = Json::array();
        for (std::size_t j = 0; j < R.n; ++j) {
            result.text += " " + fmt(R.at(i, j));
            row.push_back(json_num(R.at(i, j)));
        }
        result.text += "\n";
        rows.push_back(std::move(row));
    }
    machine["regret_matrix"] = std::move(rows);
    emit_certificate(result.text, machine, cert);

    result.exit_code = cert.violations.empty() ? 0 : 1;
    finish(result, result.exit_code == 0 ? "pass" : "fail", std::move(machine));
    return result;
}

CommandResult cmd_stability(const InstanceSpec& spec, const RunOverrides& overrides) {
    if (!spec.alternative)
        throw ParseError("instance file: stability needs an 'alternative' distribution block");
    BuiltProblem built = build_problem(spec.problem);
    const TwoStageInstance& instance = core_instance(built);
    UnionSupport u = union_support(spec.marginal, *spec.alternative);
    CostMatrix C = build_ground_cost(spec, built, u.atoms);
    RegretMatrix R = regret_matrix(instance, u.atoms);
    DominationCertificate cert = certify_domination(R, C);
    double tol = pick_tol(spec, overrides);

    CommandResult result;
    emit_header(result.text, "stability", spec);
    Json machine = machine_header("stability", spec);
    result.text += "union support: " + support_line(spec, u) + "\n";
    emit_certificate(result.text, machine, cert);

    if (!cert.violations.empty()) {
        result.text += "stability: skipped (certificate has violations)\n";
        result.exit_code = 1;
        finish(result, "fail", std::move(machine));
        return result;
    }

    StabilityReport rep = check_stability(instance, spec.marginal, *spec.alternative, C, u,
                                          cert, tol);
    emit_stability(result.text, machine, rep, tol);
    if (C.symmetric_flag()) {
        StabilityReport sym = check_symmetric_shortcut(instance, spec.marginal,
                                                       *spec.alternative, C, u, cert, tol);
        double gap = std::abs(sym.bound_forward - sym.bound_backward);
        if (std::isnan(gap))
            gap = 0.0; // both bounds infinite
        result.text += "symmetric shortcut: bounds agree (gap " + fmt(gap) + ")\n";
        machine["symmetric_shortcut_gap"] = json_num(gap);
    }

    result.exit_code = rep.pass ? 0 : 1;
    finish(result, result.exit_code == 0 ? "pass" : "fail", std::move(machine));
    return result;
}

CommandResult cmd_reduce(const InstanceSpec& spec, const RunOverrides& overrides) {
    std::size_t m = 0;
    if (overrides.m)
        m = *overrides.m;
    else if (spec.run.m)
        m = *spec.run.m;
    else
        throw ParseError("instance file: reduce needs m (run.m or --m)");
    ReductionMethod method = ReductionMethod::Greedy;
    if (overrides.method)
        method = *overrides.method;
    else if (spec.run.method)
        method = *spec.run.method;

    BuiltProblem built = build_problem(spec.problem);
    const TwoStageInstance& instance = core_instance(built);
    const DiscreteDistribution& P = spec.marginal;
    CostMatrix C = build_ground_cost(spec, built, P.atoms());

    CommandResult result;
    emit_header(result.text, "reduce", spec);
    Json machine = machine_header("reduce", spec);
    result.text += std::string("method: ") + reduction_method_name(method) + "\n";
    result.text += "m: " + std::to_string(m) + " of " + std::to_string(P.size()) + "\n";
    machine["method"] = reduction_method_name(method);
    machine["m"] = m;

    DominationCertificate precheck = certify_domination(regret_matrix(instance, P.atoms()), C);
    if (!precheck.violations.empty()) {
        emit_certificate(result.text, machine, precheck);
        result.text += "reduction: skipped (certificate has violations)\n";
        result.exit_code = 1;
        finish(result, "fail", std::move(machine));
        return result;
    }

    double tol = pick_tol(spec, overrides);
    ReductionAudit audit = reduction_stability_audit(instance, P, C, m, method, tol);
    const ReductionResult& red = audit.result;

    result.text += "kept indices:";
    for (std::size_t j : red.kept)
        result.text += " " + std::to_string(j);
    result.text += "\n";
    result.text += "reduced distribution:\n";
    Json kept_rows = Json::array();
    for (std::size_t j = 0; j < red.kept.size(); ++j) {
        result.text += "  [" + std::to_string(red.kept[j]) + "] xi = " +
                       fmt_point(red.reduced.atom(j).coords) +
                       ", w = " + fmt(red.reduced.weight(j)) + "\n";
        Json row;
        row["index"] = red.kept[j];
        row["xi"] = red.reduced.atom(j).coords;
        row["weight"] = json_num(red.reduced.weight(j));
        kept_rows.push_back(std::move(row));
    }
    machine["kept"] = std::move(kept_rows);
    result.text += "assignment (source -> kept):";
    Json assign = Json::array();
    for (std::size_t i = 0; i < red.assignment.size(); ++i) {
        result.text += " " + std::to_string(i) + "->" + std::to_string(red.assignment[i]);
        assign.push_back(red.assignment[i]);
    }
    result.text += "\n";
    machine["assignment"] = std::move(assign);
    result.text += "transport cost: " + fmt(red.transport_cost) + "\n";
    machine["transport_cost"] = json_num(red.transport_cost);

    emit_certificate(result.text, machine, audit.certificate);
    result.text += "audit:\n";
    result.text += "  tolerance: " + fmt(tol) + "\n";
    result.text += "  taint: " +
                   std::string(audit.stability.taint == Taint::Exact ? "exact" : "estimate") +
                   "\n";
    result.text += "  T(P -> Q): " + fmt(audit.stability.T_PQ) + "\n";
    result.text += "  T(Q -> P): " + fmt(audit.stability.T_QP) + "\n";
    result.text += "  realized gap: " + fmt(audit.realized_gap) + "\n";
    result.text += "  a-priori bound: " + fmt(audit.apriori_bound) + "\n";
    result.text += "  redistribution gap: " + fmt(audit.redistribution_gap) + "\n";
    result.text += std::string("  directions disagree: ") +
                   (audit.directions_disagree ? "yes" : "no") + "\n";

    Json a;
    a["tolerance"] = json_num(tol);
    a["taint"] = audit.stability.taint == Taint::Exact ? "exact" : "estimate";
    a["T_P_Q"] = json_num(audit.stability.T_PQ);
    a["T_Q_P"] = json_num(audit.stability.T_QP);
    a["realized_gap"] = json_num(audit.realized_gap);
    a["apriori_bound"] = json_num(audit.apriori_bound);
    a["redistribution_gap"] = json_num(audit.redistribution_gap);
    a["directions_disagree"] = audit.directions_disagree;
    a["pass"] = audit.pass;
    machine["audit"] = std::move(a);

    result.exit_code = audit.pass ? 0 : 1;
    finish(result, result.exit_code == 0 ? "pass" : "fail", std::move(machine));
    return result;
}

CommandResult cmd_paper_examples() {
    struct Anchor {
        std::string name;
        double expected;
        double actual;
        double tol; // 0 means exact equality
    };
    std::vector<Anchor> anchors;

    KnapsackInstance ks = build_unbounded_knapsack({6, 9, 15}, {30.0, 36.0, 45.0});
    for (double cap : {12.0, 13.0, 14.0})
        anchors.push_back({"knapsack recourse Q(" + fmt(cap) + ")", 60.0,
                           second_stage(ks.instance, {0.0}, Scenario({cap})), 0.0});
    Support pair{Scenario({14.0}), Scenario({13.0})};
    RegretMatrix R = regret_matrix(ks.instance, pair);
    anchors.push_back({"knapsack regret R(14, 13)", 0.0, R.at(0, 1), 0.0});
    CostMatrix step = cost_knapsack({6, 9, 15}, {30.0, 36.0, 45.0}, pair,
                                    KnapsackCostMode::Stepwise);
    anchors.push_back({"knapsack stepwise cost c(14, 13)", 0.0, step.at(0, 1), 0.0});
    CostMatrix lin = cost_knapsack({6, 9, 15}, {30.0, 36.0, 45.0}, pair,
                                   KnapsackCostMode::Linear);
    anchors.push_back({"knapsack linear cost c(14, 13)", 5.0, lin.at(0, 1), 0.0});

    NewsvendorInstance nv = build_newsvendor(0.0, 1.0, 3.0, {12.0, 18.0});
    Support demands{Scenario({10.0}), Scenario({20.0})};
    CostMatrix bm = cost_bm(nv.instance, demands, demands, 0.0);
    anchors.push_back({"inventory regret term c_BM(10, 20)", 6.0, bm.at(0, 1), 1e-12});

    CommandResult result;
    result.text += "pdot paper-examples report\n";
    Json machine;
    machine["command"] = "paper-examples";
    Json rows = Json::array();
    bool all_pass = true;
    for (const Anchor& a : anchors) {
        bool pass = a.tol == 0.0 ? a.actual == a.expected
                                 : std::abs(a.actual - a.expected) <= a.tol;
        all_pass = all_pass && pass;
        result.text += std::string(pass ? "[PASS] " : "[FAIL] ") + a.name + " = " +
                       fmt(a.actual) + " (expected " + fmt(a.expected) + ")\n";
        Json row;
        row["name"] = a.name;
        row["expected"] = json_num(a.expected);
        row["actual"] = json_num(a.actual);
        row["pass"] = pass;
        rows.push_back(std::move(row));
    }
    machine["anchors"] = std::move(rows);

    result.exit_code = all_pass ? 0 : 1;
    finish(result, all_pass ? "pass" : "fail", std::move(machine));
    return result;
}

} // namespace pdot
