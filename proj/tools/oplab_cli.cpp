// Batch front end: load a space definition, run the requested suite, emit
// a deterministic JSON report. Exit codes: 0 pass, 1 fail, 2 inconclusive,
// 64 usage/parse error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oplab/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"oplab: numerical laboratory for concrete operator spaces"};
    app.require_subcommand(0, 1);

    oplab::RunConfig config;
    bool seed_given = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--space", config.space_file, "space definition JSON file");
        cmd->add_option("--v", config.v_spec,
                        "distinguished element: 'search', 'identity', or an inline JSON matrix");
        cmd->add_option("--n-max", config.n_max, "max amplification level (default 3)");
        cmd->add_option("--trials", config.trials, "random trials per lemma case");
        cmd->add_option("--restarts", config.restarts, "ascent/search restarts");
        cmd->add_option("--steps", config.steps, "ascent/search steps per restart");
        cmd->add_option("--seed", config.seed, "random seed (env OPSPACE_LAB_SEED as fallback)")
            ->each([&](const std::string&) { seed_given = true; });
        cmd->add_option("--tol", config.tol, "residual tolerance (default 1e-9)");
        cmd->add_option("--output", config.output, "report path (default stdout)");
        cmd->add_option("--replay", config.replay_file, "re-verify the witnesses of a report");
    };

    for (const char* name : {"verify-lemmas", "check-conditions", "find-unit", "classify",
                             "report"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common(cmd);
        cmd->callback([&config, name]() { config.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : oplab::kExitUsage;
    }

    if (config.command.empty()) {
        std::cerr << app.help() << std::endl;
        return oplab::kExitUsage;
    }
    if (!seed_given) {
        if (const char* env = std::getenv("OPSPACE_LAB_SEED")) {
            try {
                config.seed = std::stoull(env);
            } catch (...) {
                std::cerr << "OPSPACE_LAB_SEED is not an integer: " << env << "\n";
                return oplab::kExitUsage;
            }
        }
    }
    if (config.space_file.empty() && config.replay_file.empty()) {
        std::cerr << "--space is required (or --replay)\n";
        return oplab::kExitUsage;
    }

    const oplab::RunResult result = oplab::run(config);
    if (result.report.contains("error"))
        std::cerr << result.report.at("error").get<std::string>() << "\n";
    return oplab::emit(result, config.output);
}
