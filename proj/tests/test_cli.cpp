#include <string>

#include "doctest.h"
#include "json.hpp"

#include "pdot/commands.hpp"
#include "pdot/errors.hpp"
#include "pdot/instance_file.hpp"

using namespace pdot;
using Json = nlohmann::json;

namespace {

std::string instance_path(const char* file) {
    return std::string(PDOT_INSTANCE_DIR) + "/" + file;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

// Binding facility capacity: demand growth at a zero-cost customer raises the
// recourse value, so the min-mode cost certifies nothing and must be flagged.
const char* kViolationText = R"({
  "problem": {
    "kind": "cfl",
    "costs": [[0.0, 4.0], [2.0, 3.0]],
    "capacities": [1.0, 50.0],
    "candidates": [[1, 1]]
  },
  "distribution": {
    "atoms": [[1, 1], [2, 1]],
    "weights": [0.5, 0.5]
  },
  "alternative": {
    "atoms": [[1, 1]],
    "weights": [1.0]
  },
  "cost": {"kind": "cfl_min"},
  "run": {"m": 1}
})";

const char* kTinyNewsvendor = R"({
  "name": "tiny",
  "problem": {
    "kind": "newsvendor",
    "holding": 1.0,
    "penalty": 3.0,
    "x_grid": [12.0, 18.0]
  },
  "distribution": {
    "atoms": [[10.0], [20.0]],
    "weights": [0.5, 0.5]
  },
  "cost": {"kind": "bm", "alpha": 0.5}
})";

std::string with_alternative(const std::string& base, const std::string& alt_block) {
    std::string text = base;
    std::size_t pos = text.rfind("\"cost\"");
    REQUIRE(pos != std::string::npos);
    text.insert(pos, "\"alternative\": " + alt_block + ",\n  ");
    return text;
}

} // namespace

TEST_CASE("bundled instances parse with their run defaults") {
    InstanceSpec nv = load_instance_file(instance_path("newsvendor.json"));
    CHECK(nv.name == "newsvendor_demo");
    CHECK(std::string(problem_kind_name(nv.problem)) == "newsvendor");
    CHECK(nv.marginal.size() == 10);
    REQUIRE(nv.alternative.has_value());
    CHECK(nv.alternative->size() == 3);
    CHECK(nv.cost.kind == CostKind::Bm);
    CHECK(nv.cost.alpha == 0.5);
    REQUIRE(nv.run.m.has_value());
    CHECK(*nv.run.m == 3);
    CHECK(*nv.run.method == ReductionMethod::Exhaustive);
    CHECK(*nv.run.tol == 1e-7);

    InstanceSpec cfl = load_instance_file(instance_path("cfl.json"));
    CHECK(std::string(problem_kind_name(cfl.problem)) == "cfl");
    CHECK(cfl.marginal.size() == 10);
    CHECK(cfl.marginal.dim() == 2);
    CHECK(cfl.cost.kind == CostKind::CflMax);

    InstanceSpec ks = load_instance_file(instance_path("knapsack.json"));
    CHECK(std::string(problem_kind_name(ks.problem)) == "knapsack");
    const auto& spec = std::get<KnapsackSpec>(ks.problem);
    CHECK(spec.weights == std::vector<std::int64_t>{6, 9, 15});
    CHECK(ks.cost.kind == CostKind::KnapsackStepwise);
}

TEST_CASE("unknown and missing keys are rejected at every level") {
    InstanceSpec ok = parse_instance_text(kTinyNewsvendor);
    CHECK(ok.name == "tiny");

    auto mutate = [](const std::string& from, const std::string& to) {
        std::string text = kTinyNewsvendor;
        std::size_t pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, from.size(), to);
        return text;
    };

    CHECK_THROWS_AS(parse_instance_text(mutate("\"name\"", "\"label\"")), ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"holding\"", "\"hold\"")), ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"weights\"", "\"mass\"")), ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"alpha\"", "\"a\"")), ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"kind\": \"bm\"", "\"kind\": \"unknown\"")),
                    ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"kind\": \"newsvendor\"", "\"kind\": \"lp\"")),
                    ParseError);
    CHECK_THROWS_AS(parse_instance_text("{\"problem\": {}}"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("not json"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("[1, 2]"), ParseError);
}

TEST_CASE("cost and run parameters are validated") {
    auto mutate = [](const std::string& from, const std::string& to) {
        std::string text = kTinyNewsvendor;
        std::size_t pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, from.size(), to);
        return text;
    };

    CHECK_THROWS_AS(parse_instance_text(mutate("\"alpha\": 0.5", "\"alpha\": 0.0")), ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"alpha\": 0.5", "\"alpha\": -1.0")), ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"kind\": \"bm\", \"alpha\": 0.5",
                                               "\"kind\": \"bm\"")),
                    ParseError);
    CHECK_THROWS_AS(
        parse_instance_text(mutate("\"kind\": \"bm\", \"alpha\": 0.5",
                                   "\"kind\": \"composite\", \"alpha\": 1.0, \"beta\": -0.5, "
                                   "\"gamma\": 0.0")),
        ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"kind\": \"bm\", \"alpha\": 0.5",
                                               "\"kind\": \"avg_regret\", \"panel\": []")),
                    ParseError);

    CHECK_THROWS_AS(parse_instance_text(mutate("\"cost\"", "\"run\": {\"m\": 0},\n  \"cost\"")),
                    ParseError);
    CHECK_THROWS_AS(
        parse_instance_text(mutate("\"cost\"", "\"run\": {\"tol\": 0.0},\n  \"cost\"")),
        ParseError);
    CHECK_THROWS_AS(
        parse_instance_text(mutate("\"cost\"", "\"run\": {\"method\": \"best\"},\n  \"cost\"")),
        ParseError);
    CHECK_THROWS_AS(
        parse_instance_text(mutate("\"cost\"", "\"run\": {\"seed\": -3},\n  \"cost\"")),
        ParseError);

    CHECK_THROWS_AS(parse_instance_text(mutate("\"weights\": [0.5, 0.5]",
                                               "\"weights\": [0.5, 0.4]")),
                    ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"atoms\": [[10.0], [20.0]]",
                                               "\"atoms\": [[10.0], [10.0]]")),
                    ParseError);
}

TEST_CASE("cost kinds are checked against the problem kind") {
    auto mutate = [](const std::string& from, const std::string& to) {
        std::string text = kTinyNewsvendor;
        std::size_t pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, from.size(), to);
        return text;
    };
    CHECK_THROWS_AS(parse_instance_text(mutate("\"kind\": \"bm\", \"alpha\": 0.5",
                                               "\"kind\": \"cfl_max\"")),
                    ParseError);
    CHECK_THROWS_AS(parse_instance_text(mutate("\"kind\": \"bm\", \"alpha\": 0.5",
                                               "\"kind\": \"knapsack_stepwise\"")),
                    ParseError);

    std::string cfl_with_knapsack_cost = R"({
      "problem": {
        "kind": "cfl",
        "costs": [[1.0]],
        "capacities": [10.0],
        "candidates": [[1]]
      },
      "distribution": {"atoms": [[1.0]], "weights": [1.0]},
      "cost": {"kind": "knapsack_linear"}
    })";
    CHECK_THROWS_AS(parse_instance_text(cfl_with_knapsack_cost), ParseError);
}

TEST_CASE("solve reports the minimizer and per-candidate values") {
    InstanceSpec spec = load_instance_file(instance_path("newsvendor.json"));
    CommandResult r = cmd_solve(spec);
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("v(P): 8.2\n") != std::string::npos);
    CHECK(r.text.find("minimizer: [5] x = (20)\n") != std::string::npos);
    CHECK(r.text.find("verdict: ok\n") != std::string::npos);

    Json j = Json::parse(r.machine);
    CHECK(j.at("command") == "solve");
    CHECK(j.at("instance") == "newsvendor_demo");
    CHECK(j.at("v_P").get<double>() == doctest::Approx(8.2));
    CHECK(j.at("minimizer").get<int>() == 5);
    CHECK(j.at("candidates").size() == 6);
    CHECK(j.at("atoms").size() == 10);
}

TEST_CASE("stability passes on the bundled newsvendor instance") {
    InstanceSpec spec = load_instance_file(instance_path("newsvendor.json"));
    CommandResult r = cmd_stability(spec);
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("beta_hat: 6\n") != std::string::npos);
    CHECK(r.text.find("violations: none\n") != std::string::npos);
    CHECK(r.text.find("verdict: pass\n") != std::string::npos);

    Json j = Json::parse(r.machine);
    const Json& s = j.at("stability");
    CHECK(s.at("v_P").get<double>() == doctest::Approx(8.2));
    CHECK(s.at("v_nu").get<double>() == doctest::Approx(6.4));
    CHECK(s.at("T_P_nu").get<double>() == doctest::Approx(6.2));
    CHECK(s.at("T_nu_P").get<double>() == doctest::Approx(3.0));
    CHECK(s.at("pass").get<bool>());
    CHECK(s.at("taint") == "exact");
}

TEST_CASE("stability needs an alternative distribution") {
    InstanceSpec spec = parse_instance_text(kTinyNewsvendor);
    CHECK_THROWS_AS(cmd_stability(spec), ParseError);
}

TEST_CASE("identical marginal and alternative give a zero gap") {
    std::string text = with_alternative(
        kTinyNewsvendor, "{\"atoms\": [[10.0], [20.0]], \"weights\": [0.5, 0.5]}");
    InstanceSpec spec = parse_instance_text(text);
    CommandResult r = cmd_stability(spec);
    CHECK(r.exit_code == 0);
    Json j = Json::parse(r.machine);
    const Json& s = j.at("stability");
    CHECK(s.at("lhs_forward").get<double>() == 0.0);
    CHECK(s.at("T_P_nu").get<double>() == 0.0);
    CHECK(s.at("pass").get<bool>());
}

TEST_CASE("reduce with m = n keeps everything at zero cost") {
    InstanceSpec spec = load_instance_file(instance_path("knapsack.json"));
    RunOverrides overrides;
    overrides.m = spec.marginal.size();
    overrides.method = ReductionMethod::Greedy;
    CommandResult r = cmd_reduce(spec, overrides);
    CHECK(r.exit_code == 0);
    Json j = Json::parse(r.machine);
    CHECK(j.at("m").get<std::size_t>() == 10);
    CHECK(j.at("transport_cost").get<double>() == 0.0);
    CHECK(j.at("kept").size() == 10);
    CHECK(j.at("audit").at("pass").get<bool>());
}

TEST_CASE("reduce requires m from the file or the caller") {
    InstanceSpec spec = parse_instance_text(kTinyNewsvendor);
    CHECK_THROWS_AS(cmd_reduce(spec), ParseError);
}

TEST_CASE("certificate violations gate stability and reduction") {
    InstanceSpec spec = parse_instance_text(kViolationText);

    CommandResult regret = cmd_regret(spec);
    CHECK(regret.exit_code == 1);
    CHECK(regret.text.find("violations: 1\n") != std::string::npos);
    CHECK(regret.text.find("positive regret against zero cost") != std::string::npos);
    CHECK(regret.text.find("verdict: fail\n") != std::string::npos);

    CommandResult stab = cmd_stability(spec);
    CHECK(stab.exit_code == 1);
    CHECK(stab.text.find("stability: skipped (certificate has violations)\n") !=
          std::string::npos);

    CommandResult red = cmd_reduce(spec);
    CHECK(red.exit_code == 1);
    CHECK(red.text.find("reduction: skipped (certificate has violations)\n") !=
          std::string::npos);
    Json j = Json::parse(red.machine);
    CHECK(j.at("verdict") == "fail");
}

TEST_CASE("regret passes on the violation-free bundled instances") {
    for (const char* file : {"newsvendor.json", "cfl.json", "knapsack.json"}) {
        CAPTURE(file);
        CommandResult r = cmd_regret(load_instance_file(instance_path(file)));
        CHECK(r.exit_code == 0);
        CHECK(r.text.find("violations: none\n") != std::string::npos);
    }
}

TEST_CASE("reports are byte-identical across runs") {
    InstanceSpec spec = load_instance_file(instance_path("newsvendor.json"));
    CommandResult a = cmd_stability(spec);
    CommandResult b = cmd_stability(spec);
    CHECK(a.text == b.text);
    CHECK(a.machine == b.machine);

    CommandResult c = cmd_reduce(spec);
    CommandResult d = cmd_reduce(spec);
    CHECK(c.text == d.text);
    CHECK(c.machine == d.machine);
}

TEST_CASE("method and tolerance overrides reach the report") {
    InstanceSpec spec = load_instance_file(instance_path("newsvendor.json"));
    RunOverrides overrides;
    overrides.method = ReductionMethod::SwapLocalSearch;
    overrides.tol = 1e-3;
    CommandResult r = cmd_reduce(spec, overrides);
    CHECK(r.text.find("method: swap\n") != std::string::npos);
    CHECK(r.text.find("tolerance: 0.001\n") != std::string::npos);
    Json j = Json::parse(r.machine);
    CHECK(j.at("method") == "swap");
    CHECK(j.at("audit").at("tolerance").get<double>() == doctest::Approx(1e-3));
}

TEST_CASE("cmd_paper_examples anchors all pass") {
    CommandResult r = cmd_paper_examples();
    CHECK(r.exit_code == 0);
    CHECK(count_occurrences(r.text, "[PASS]") == 7);
    CHECK(count_occurrences(r.text, "[FAIL]") == 0);
    CHECK(r.text.find("verdict: pass\n") != std::string::npos);
}
