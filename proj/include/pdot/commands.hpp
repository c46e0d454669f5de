#pragma once

#include <optional>
#include <string>

#include "pdot/instance_file.hpp"

namespace pdot {

/**
 * @brief Outcome of one CLI command: exit code 0 (success) or 1
 * (verification failure), the human-readable report, and the
 * machine-readable JSON document. Input errors are thrown instead and map
 * to exit code 2 in the driver.
 */
struct CommandResult {
    int exit_code = 0;
    std::string text;
    std::string machine;
};

/// Command-line overrides for the file's run block (flags win).
struct RunOverrides {
    std::optional<std::size_t> m;
    std::optional<ReductionMethod> method;
    std::optional<double> tol;
};

CommandResult cmd_solve(const InstanceSpec& spec);
CommandResult cmd_regret(const InstanceSpec& spec);
CommandResult cmd_stability(const InstanceSpec& spec, const RunOverrides& overrides = {});
CommandResult cmd_reduce(const InstanceSpec& spec, const RunOverrides& overrides = {});
CommandResult cmd_paper_examples();

} // namespace pdot
