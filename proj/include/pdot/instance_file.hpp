#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdot/costs.hpp"
#include "pdot/measures.hpp"
#include "pdot/problems.hpp"
#include "pdot/reduce.hpp"

namespace pdot {

struct NewsvendorSpec {
    double order_cost = 0.0;
    double holding = 0.0;
    double penalty = 0.0;
    std::vector<double> x_grid;
};

struct CflSpec {
    Matrix costs; // facilities × customers
    std::vector<double> capacities;
    std::vector<Decision> candidates;
};

struct KnapsackSpec {
    std::vector<std::int64_t> weights;
    std::vector<double> values;
};

using ProblemSpec = std::variant<NewsvendorSpec, CflSpec, KnapsackSpec>;

enum class CostKind {
    Norm,
    Bm,
    BmSymmetrized,
    AvgRegret,
    Composite,
    CflMax,
    CflMin,
    KnapsackStepwise,
    KnapsackLinear,
};

const char* cost_kind_name(CostKind kind);

struct CostSpec {
    CostKind kind = CostKind::Norm;
    double alpha = 0.0;
    double beta_w = 0.0;
    double gamma_w = 0.0;
    std::vector<Decision> panel;
};

struct RunSpec {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> m;
    std::optional<ReductionMethod> method;
    std::optional<double> tol;
};

/**
 * @brief A fully validated instance document: problem block, marginal(s),
 * ground-cost spec, and run options. Unknown keys are rejected at parse.
 */
struct InstanceSpec {
    std::string name;
    ProblemSpec problem;
    DiscreteDistribution marginal;
    std::optional<DiscreteDistribution> alternative;
    CostSpec cost;
    RunSpec run;
};

const char* problem_kind_name(const ProblemSpec& problem);

/// Parses and validates an instance document from JSON text.
InstanceSpec parse_instance_text(const std::string& text);

/// Reads the file and delegates to parse_instance_text.
InstanceSpec load_instance_file(const std::string& path);

using BuiltProblem = std::variant<NewsvendorInstance, CflInstance, KnapsackInstance>;

BuiltProblem build_problem(const ProblemSpec& problem);

const TwoStageInstance& core_instance(const BuiltProblem& built);

/// Evaluates the instance's ground-cost spec over one support.
CostMatrix build_ground_cost(const InstanceSpec& spec, const BuiltProblem& built,
                             const Support& support);

} // namespace pdot
