#include "pdot/instance_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace pdot {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError("instance file: " + where + ": " + what);
}

void check_object(const Json& j, const std::string& where,
                  const std::vector<const char*>& required,
                  const std::vector<const char*>& optional) {
    if (!j.is_object())
        fail(where, "expected an object");
    for (const char* key : required)
        if (!j.contains(key))
            fail(where, std::string("missing required key '") + key + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto match = [&](const char* key) { return it.key() == key; };
        if (std::any_of(required.begin(), required.end(), match) ||
            std::any_of(optional.begin(), optional.end(), match))
            continue;
        fail(where, "unknown key '" + it.key() + "'");
    }
}

double get_number(const Json& j, const std::string& where, const char* key) {
    const Json& v = j.at(key);
    if (!v.is_number())
        fail(where + "." + key, "expected a number");
    return v.get<double>();
}

std::string get_string(const Json& j, const std::string& where, const char* key) {
    const Json& v = j.at(key);
    if (!v.is_string())
        fail(where + "." + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> get_number_array(const Json& v, const std::string& where) {
    if (!v.is_array() || v.empty())
        fail(where, "expected a non-empty array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const Json& e : v) {
        if (!e.is_number())
            fail(where, "expected a number, got " + std::string(e.type_name()));
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> get_row_array(const Json& v, const std::string& where) {
    if (!v.is_array() || v.empty())
        fail(where, "expected a non-empty array of arrays");
    std::vector<std::vector<double>> rows;
    rows.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        rows.push_back(get_number_array(v[i], where + "[" + std::to_string(i) + "]"));
    return rows;
}

DiscreteDistribution parse_distribution(const Json& j, const std::string& where) {
    check_object(j, where, {"atoms", "weights"}, {});
    std::vector<std::vector<double>> rows = get_row_array(j.at("atoms"), where + ".atoms");
    std::vector<double> weights = get_number_array(j.at("weights"), where + ".weights");
    try {
        std::vector<Scenario> atoms;
        atoms.reserve(rows.size());
        for (auto& r : rows)
            atoms.emplace_back(std::move(r));
        return make_distribution(std::move(atoms), std::move(weights));
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

std::vector<Decision> parse_decisions(const Json& v, const std::string& where) {
    std::vector<Decision> out;
    for (auto& row : get_row_array(v, where))
        out.push_back(std::move(row));
    return out;
}

ProblemSpec parse_problem(const Json& j) {
    const std::string where = "problem";
    if (!j.is_object() || !j.contains("kind"))
        fail(where, "expected an object with a 'kind' key");
    std::string kind = get_string(j, where, "kind");

    if (kind == "newsvendor") {
        check_object(j, where, {"kind", "holding", "penalty", "x_grid"}, {"order_cost"});
        NewsvendorSpec spec;
        spec.holding = get_number(j, where, "holding");
        spec.penalty = get_number(j, where, "penalty");
        if (j.contains("order_cost"))
            spec.order_cost = get_number(j, where, "order_cost");
        spec.x_grid = get_number_array(j.at("x_grid"), where + ".x_grid");
        return spec;
    }
    if (kind == "cfl") {
        check_object(j, where, {"kind", "costs", "capacities", "candidates"}, {});
        std::vector<std::vector<double>> rows = get_row_array(j.at("costs"), where + ".costs");
        std::size_t cols = rows.front().size();
        std::vector<double> flat;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                fail(where + ".costs", "ragged rows");
            flat.insert(flat.end(), rows[i].begin(), rows[i].end());
        }
        CflSpec spec{Matrix(rows.size(), cols, std::move(flat)),
                     get_number_array(j.at("capacities"), where + ".capacities"),
                     parse_decisions(j.at("candidates"), where + ".candidates")};
        return spec;
    }
    if (kind == "knapsack") {
        check_object(j, where, {"kind", "weights", "values"}, {});
        const Json& w = j.at("weights");
        if (!w.is_array() || w.empty())
            fail(where + ".weights", "expected a non-empty array of positive integers");
        KnapsackSpec spec;
        for (const Json& e : w) {
            if (!e.is_number_integer() || e.get<std::int64_t>() < 1)
                fail(where + ".weights", "expected positive integers");
            spec.weights.push_back(e.get<std::int64_t>());
        }
        spec.values = get_number_array(j.at("values"), where + ".values");
        return spec;
    }
    fail(where + ".kind", "unknown problem kind '" + kind + "'");
}

CostSpec parse_cost(const Json& j, const ProblemSpec& problem) {
    const std::string where = "cost";
    if (!j.is_object() || !j.contains("kind"))
        fail(where, "expected an object with a 'kind' key");
    std::string kind = get_string(j, where, "kind");
    CostSpec spec;

    if (kind == "norm") {
        check_object(j, where, {"kind"}, {});
        spec.kind = CostKind::Norm;
    } else if (kind == "bm" || kind == "bm_symmetrized") {
        check_object(j, where, {"kind", "alpha"}, {});
        spec.kind = kind == "bm" ? CostKind::Bm : CostKind::BmSymmetrized;
        spec.alpha = get_number(j, where, "alpha");
        if (!(spec.alpha > 0.0))
            fail(where + ".alpha", "the norm regularizer must be positive");
    } else if (kind == "avg_regret") {
        check_object(j, where, {"kind", "panel"}, {});
        spec.kind = CostKind::AvgRegret;
        spec.panel = parse_decisions(j.at("panel"), where + ".panel");
    } else if (kind == "composite") {
        check_object(j, where, {"kind", "alpha", "beta", "gamma"}, {});
        spec.kind = CostKind::Composite;
        spec.alpha = get_number(j, where, "alpha");
        spec.beta_w = get_number(j, where, "beta");
        spec.gamma_w = get_number(j, where, "gamma");
        if (!(spec.alpha > 0.0))
            fail(where + ".alpha", "the norm regularizer must be positive");
        if (spec.beta_w < 0.0 || spec.gamma_w < 0.0)
            fail(where, "composite weights must be nonnegative");
    } else if (kind == "cfl_max" || kind == "cfl_min") {
        check_object(j, where, {"kind"}, {});
        if (!std::holds_alternative<CflSpec>(problem))
            fail(where + ".kind", "'" + kind + "' needs a cfl problem block");
        spec.kind = kind == "cfl_max" ? CostKind::CflMax : CostKind::CflMin;
    } else if (kind == "knapsack_stepwise" || kind == "knapsack_linear") {
        check_object(j, where, {"kind"}, {});
        if (!std::holds_alternative<KnapsackSpec>(problem))
            fail(where + ".kind", "'" + kind + "' needs a knapsack problem block");
        spec.kind =
            kind == "knapsack_stepwise" ? CostKind::KnapsackStepwise : CostKind::KnapsackLinear;
    } else {
        fail(where + ".kind", "unknown cost kind '" + kind + "'");
    }
    return spec;
}

RunSpec parse_run(const Json& j) {
    const std::string where = "run";
    check_object(j, where, {}, {"seed", "m", "method", "tol"});
    RunSpec run;
    if (j.contains("seed")) {
        const Json& s = j.at("seed");
        if (!s.is_number_unsigned())
            fail(where + ".seed", "expected a nonnegative integer");
        run.seed = s.get<std::uint64_t>();
    }
    if (j.contains("m")) {
        const Json& m = j.at("m");
        if (!m.is_number_unsigned() || m.get<std::uint64_t>() == 0)
            fail(where + ".m", "expected a positive integer");
        run.m = m.get<std::size_t>();
    }
    if (j.contains("method")) {
        std::string method = get_string(j, where, "method");
        if (method == "exhaustive")
            run.method = ReductionMethod::Exhaustive;
        else if (method == "greedy")
            run.method = ReductionMethod::Greedy;
        else if (method == "swap")
            run.method = ReductionMethod::SwapLocalSearch;
        else
            fail(where + ".method", "expected exhaustive, greedy, or swap");
    }
    if (j.contains("tol")) {
        run.tol = get_number(j, where, "tol");
        if (!(*run.tol > 0.0) || !std::isfinite(*run.tol))
            fail(where + ".tol", "expected a positive number");
    }
    return run;
}

} // namespace

const char* cost_kind_name(CostKind kind) {
    switch (kind) {
    case CostKind::Norm:
        return "norm";
    case CostKind::Bm:
        return "bm";
    case CostKind::BmSymmetrized:
        return "bm_symmetrized";
    case CostKind::AvgRegret:
        return "avg_regret";
    case CostKind::Composite:
        return "composite";
    case CostKind::CflMax:
        return "cfl_max";
    case CostKind::CflMin:
        return "cfl_min";
    case CostKind::KnapsackStepwise:
        return "knapsack_stepwise";
    case CostKind::KnapsackLinear:
        return "knapsack_linear";
    }
    return "unknown";
}

const char* problem_kind_name(const ProblemSpec& problem) {
    if (std::holds_alternative<NewsvendorSpec>(problem))
        return "newsvendor";
    if (std::holds_alternative<CflSpec>(problem))
        return "cfl";
    return "knapsack";
}

InstanceSpec parse_instance_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("instance file: ") + e.what());
    }
    check_object(doc, "document", {"problem", "distribution", "cost"},
                 {"name", "alternative", "run"});

    std::string name = "instance";
    if (doc.contains("name"))
        name = get_string(doc, "document", "name");

    ProblemSpec problem = parse_problem(doc.at("problem"));
    DiscreteDistribution marginal = parse_distribution(doc.at("distribution"), "distribution");
    std::optional<DiscreteDistribution> alternative;
    if (doc.contains("alternative"))
        alternative = parse_distribution(doc.at("alternative"), "alternative");
    CostSpec cost = parse_cost(doc.at("cost"), problem);
    RunSpec run;
    if (doc.contains("run"))
        run = parse_run(doc.at("run"));

    return InstanceSpec{std::move(name),        std::move(problem), std::move(marginal),
                        std::move(alternative), std::move(cost),    std::move(run)};
}

InstanceSpec load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("instance file: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str());
}

BuiltProblem build_problem(const ProblemSpec& problem) {
    if (const auto* nv = std::get_if<NewsvendorSpec>(&problem))
        return build_newsvendor(nv->order_cost, nv->holding, nv->penalty, nv->x_grid);
    if (const auto* cfl = std::get_if<CflSpec>(&problem))
        return build_cfl_single_source(cfl->costs, cfl->capacities, cfl->candidates);
    const auto& ks = std::get<KnapsackSpec>(problem);
    return build_unbounded_knapsack(ks.weights, ks.values);
}

const TwoStageInstance& core_instance(const BuiltProblem& built) {
    return std::visit([](const auto& b) -> const TwoStageInstance& { return b.instance; }, built);
}

CostMatrix build_ground_cost(const InstanceSpec& spec, const BuiltProblem& built,
                             const Support& support) {
    const TwoStageInstance& instance = core_instance(built);
    switch (spec.cost.kind) {
    case CostKind::Norm:
        return cost_norm(support, support);
    case CostKind::Bm:
        return cost_bm(instance, support, support, spec.cost.alpha);
    case CostKind::BmSymmetrized:
        return cost_bm_symmetrized(instance, support, spec.cost.alpha);
    case CostKind::AvgRegret:
        return cost_avg_regret(instance, spec.cost.panel, support);
    case CostKind::Composite:
        return cost_composite(instance, support, spec.cost.alpha, spec.cost.beta_w,
                              spec.cost.gamma_w);
    case CostKind::CflMax:
        return cost_cfl(std::get<CflInstance>(built), support, CflCostMode::Max);
    case CostKind::CflMin:
        return cost_cfl(std::get<CflInstance>(built), support, CflCostMode::Min);
    case CostKind::KnapsackStepwise:
    case CostKind::KnapsackLinear: {
        const auto& ks = std::get<KnapsackSpec>(spec.problem);
        return cost_knapsack(ks.weights, ks.values, support,
                             spec.cost.kind == CostKind::KnapsackStepwise
                                 ? KnapsackCostMode::Stepwise
                                 : KnapsackCostMode::Linear);
    }
    }
    throw Error("ground cost: unhandled kind");
}

} // namespace pdot
