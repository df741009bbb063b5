// Command-line front end: `convergence` runs an error sweep over coarse
// resolutions and writes CSV/JSON reports; `solve` runs one resolution and
// writes solution/basis/macro dumps.  Exit codes: 0 success, 2 unusable
// configuration, 3 numerical failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ams1d/ams1d.hpp"

namespace {

struct CliOptions {
    ams1d::RunConfig config;
    std::string configPath;
    bool seedGiven = false;
    bool meshGiven = false;
    std::string meshName = "uniform";
};

void addCommonFlags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--problem", opts.config.problem,
                    "problem id: ex1..ex5 or external:<path>");
    cmd->add_option("--nh", opts.config.microIntervals, "micro interval count");
    cmd->add_option("--NH", opts.config.macroIntervals,
                    "comma-separated macro interval counts")
        ->delimiter(',');
    cmd->add_option("--mesh", opts.meshName, "micro mesh kind: uniform|random")
        ->check(CLI::IsMember({"uniform", "random"}));
    cmd->add_option("--seed", opts.config.seed, "seed for all randomized draws");
    cmd->add_option("--out", opts.config.outDir, "output directory");
    cmd->add_flag("--no-timestamp", opts.config.noTimestamp,
                  "omit the timestamp from json metadata");
    cmd->add_option("--config", opts.configPath, "json config file; flags override it");
}

/// Flags override config-file values, which override defaults.
void mergeConfigFile(const CLI::App& cmd, CliOptions& opts) {
    if (opts.configPath.empty())
        return;
    std::ifstream in(opts.configPath);
    if (!in)
        throw ams1d::ConfigError("cannot open config file \"" + opts.configPath + "\"");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ams1d::ConfigError("invalid json in config file: " + std::string(e.what()));
    }
    const auto flagGiven = [&cmd](const std::string& name) {
        return cmd.count(name) > 0;
    };
    if (j.contains("problem") && !flagGiven("--problem"))
        opts.config.problem = j["problem"].get<std::string>();
    if (j.contains("nh") && !flagGiven("--nh"))
        opts.config.microIntervals = j["nh"].get<int>();
    if (j.contains("NH") && !flagGiven("--NH"))
        opts.config.macroIntervals = j["NH"].get<std::vector<int>>();
    if (j.contains("mesh") && !flagGiven("--mesh")) {
        opts.meshName = j["mesh"].get<std::string>();
        if (opts.meshName != "uniform" && opts.meshName != "random")
            throw ams1d::ConfigError("config file: mesh must be uniform or random");
    }
    if (j.contains("seed") && !flagGiven("--seed")) {
        opts.config.seed = j["seed"].get<std::uint64_t>();
        opts.seedGiven = true;
    }
    if (j.contains("out") && !flagGiven("--out"))
        opts.config.outDir = j["out"].get<std::string>();
}

void finalize(const CLI::App& cmd, CliOptions& opts) {
    mergeConfigFile(cmd, opts);
    opts.config.meshKind =
        opts.meshName == "random" ? ams1d::MeshKind::Random : ams1d::MeshKind::Uniform;
    if (cmd.count("--seed") > 0)
        opts.seedGiven = true;
    if (!opts.seedGiven) {
        if (const char* env = std::getenv("AMS1D_SEED"))
            opts.config.seed = std::strtoull(env, nullptr, 10);
    }
}

void printReport(const ams1d::ConvergenceReportd& report) {
    std::cout << "problem " << report.problem << ", N_h " << report.microIntervals << ", mesh "
              << report.meshKind << ", seed " << report.seed << "\n";
    std::cout << ams1d::reportToCsv(report);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebraic two-level multiscale solver for 1d elliptic systems"};
    app.require_subcommand(1);

    CliOptions convOpts;
    CLI::App* conv = app.add_subcommand("convergence", "error sweep over coarse resolutions");
    addCommonFlags(conv, convOpts);

    CliOptions solveOpts;
    CLI::App* solve = app.add_subcommand("solve", "single-resolution solve with dumps");
    addCommonFlags(solve, solveOpts);
    solve->add_flag("--dump-solution", solveOpts.config.dumpSolution,
                    "write solution.csv (x, u_ref, u_ms[, u_hom])");
    solve->add_option("--dump-basis", solveOpts.config.dumpBasis,
                      "write basis_K<k>.csv for the hat of macro node k");
    solve->add_flag("--dump-macro", solveOpts.config.dumpMacro,
                    "write macro.json (coarse system, tridiagonal format)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (conv->parsed()) {
            finalize(*conv, convOpts);
            printReport(ams1d::runConvergence(convOpts.config));
        } else {
            finalize(*solve, solveOpts);
            const ams1d::SolveSummary s = ams1d::runSolve(solveOpts.config);
            std::cout << "e_energy " << s.energyError << ", e_L2 " << s.l2ErrorValue << "\n";
        }
    } catch (const ams1d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ams1d::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ams1d::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
