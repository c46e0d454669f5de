#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "pdot/commands.hpp"

namespace {

int emit(const pdot::CommandResult& result, const std::string& out_path) {
    std::fputs(result.text.c_str(), stdout);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
            return 2;
        }
        out << result.machine;
    }
    return result.exit_code;
}

pdot::ReductionMethod parse_method(const std::string& token) {
    if (token == "exhaustive")
        return pdot::ReductionMethod::Exhaustive;
    if (token == "swap")
        return pdot::ReductionMethod::SwapLocalSearch;
    return pdot::ReductionMethod::Greedy;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"problem-dependent optimal-transport scenario reduction"};
    app.require_subcommand(1);

    std::string file, out, method;
    std::size_t m = 0;
    double tol = 0.0;

    auto* solve = app.add_subcommand("solve", "evaluate v(P) and the minimizing candidate");
    auto* regret = app.add_subcommand("regret", "regret matrix and domination certificate");
    auto* stability =
        app.add_subcommand("stability", "check the stability bounds for P vs alternative");
    auto* reduce = app.add_subcommand("reduce", "reduce P to m atoms and audit the bound");
    auto* anchors = app.add_subcommand("paper-examples", "run the anchored worked examples");

    for (CLI::App* sub : {solve, regret, stability, reduce})
        sub->add_option("--file", file, "instance file (JSON)")->required();
    for (CLI::App* sub : {solve, regret, stability, reduce, anchors})
        sub->add_option("--out", out, "write the machine-readable report here");
    CLI::Option* tol_stab = stability->add_option("--tol", tol, "stability tolerance");
    CLI::Option* tol_red = reduce->add_option("--tol", tol, "stability tolerance");
    CLI::Option* m_opt = reduce->add_option("--m", m, "number of atoms to keep");
    CLI::Option* method_opt =
        reduce->add_option("--method", method, "exhaustive, greedy, or swap")
            ->check(CLI::IsMember({"exhaustive", "greedy", "swap"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (anchors->parsed())
            return emit(pdot::cmd_paper_examples(), out);

        pdot::InstanceSpec spec = pdot::load_instance_file(file);
        if (solve->parsed())
            return emit(pdot::cmd_solve(spec), out);
        if (regret->parsed())
            return emit(pdot::cmd_regret(spec), out);

        pdot::RunOverrides overrides;
        if (tol_stab->count() || tol_red->count())
            overrides.tol = tol;
        if (m_opt->count())
            overrides.m = m;
        if (method_opt->count())
            overrides.method = parse_method(method);
        if (stability->parsed())
            return emit(pdot::cmd_stability(spec, overrides), out);
        return emit(pdot::cmd_reduce(spec, overrides), out);
    } catch (const pdot::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
