#ifndef AMS1D_EXPERIMENT_HPP
#define AMS1D_EXPERIMENT_HPP

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ams1d/error_norms.hpp"
#include "ams1d/pipeline.hpp"
#include "ams1d/problems.hpp"
#include "ams1d/report_io.hpp"
#include "ams1d/serialization.hpp"

namespace ams1d {

/// A configuration the CLI could not act on; maps to exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

/// Everything one run needs: problem id, resolutions, mesh kind, seed,
/// output directory, and dump flags.
struct RunConfig {
    std::string problem = "ex1"; ///< ex1..ex5 or external:<path>
    int microIntervals = 1024;
    std::vector<int> macroIntervals = {2, 4, 8, 16, 32, 64};
    MeshKind meshKind = MeshKind::Uniform;
    std::uint64_t seed = 1;
    std::string outDir = ".";
    bool dumpSolution = false;
    int dumpBasis = -1; ///< macro node index, -1 = off
    bool dumpMacro = false;
    bool noTimestamp = false;
};

inline void validateConfig(const RunConfig& config) {
    if (config.microIntervals < 1)
        throw ConfigError("config: --nh must be at least 1");
    if (config.macroIntervals.empty())
        throw ConfigError("config: --NH must name at least one value");
    int prev = 0;
    for (int nH : config.macroIntervals) {
        if (nH < 1)
            throw ConfigError("config: macro interval counts must be positive");
        if (nH > config.microIntervals)
            throw ConfigError("config: --NH value " + std::to_string(nH) +
                              " exceeds --nh " + std::to_string(config.microIntervals));
        if (prev > 0 && (nH <= prev || nH % prev != 0))
            throw ConfigError("config: --NH values must ascend and nest (each divides the next)");
        prev = nH;
    }
}

inline ProblemSpecd makeProblem(const RunConfig& config) {
    const std::string& id = config.problem;
    if (id == "ex1")
        return example1<double>();
    if (id == "ex2" || id == "ex3" || id == "ex4" || id == "ex5")
        return exampleRandom<double>(id[2] - '0', config.seed);
    if (id.rfind("external:", 0) == 0)
        return loadExternal<double>(id.substr(9));
    throw ConfigError("config: unknown problem \"" + id +
                      "\" (expected ex1..ex5 or external:<path>)");
}

namespace detail {

inline std::string utcTimestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline void writeFile(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write \"" + path.string() + "\"");
    out << content;
}

/// Full-precision CSV row formatting for plot data.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Runs the convergence sweep and writes convergence.csv / convergence.json
/// into the output directory.  Deterministic for a fixed config and seed;
/// the json timestamp is the one exception and is dropped under
/// noTimestamp.
inline ConvergenceReportd runConvergence(const RunConfig& config) {
    validateConfig(config);
    const ProblemSpecd spec = makeProblem(config);
    const ConvergenceReportd report = convergenceStudy(
        spec, config.microIntervals, config.macroIntervals, config.meshKind, config.seed);

    std::filesystem::create_directories(config.outDir);
    const std::filesystem::path out(config.outDir);
    detail::writeFile(out / "convergence.csv", reportToCsv(report));
    const std::string stamp = config.noTimestamp ? "" : detail::utcTimestamp();
    detail::writeFile(out / "convergence.json", reportToJson(report, stamp).dump(2) + "\n");
    return report;
}

/// Result of a single-resolution solve plus the file dumps requested by the
/// config flags.
struct SolveSummary {
    double energyError = 0;
    double l2ErrorValue = 0;
};

/// Runs one (problem, N_H) pipeline and writes the requested dumps:
/// solution.csv (x, u_ref, u_ms and u_hom when available), basis_K<k>.csv
/// (x, psi for the hat of macro node k), macro.json (the coarse system in
/// the tridiagonal interchange format).
inline SolveSummary runSolve(const RunConfig& config) {
    validateConfig(config);
    if (config.macroIntervals.size() != 1)
        throw ConfigError("config: solve needs exactly one --NH value");
    const int nH = config.macroIntervals.front();
    if (config.dumpBasis > nH)
        throw ConfigError("config: --dump-basis index exceeds the macro node count");

    const ProblemSpecd spec = makeProblem(config);
    const MicroSystemd micro =
        buildMicroSystem(spec, config.microIntervals, config.meshKind, config.seed);
    const CoarseningMap map = buildCoarsening(micro.mesh, nH);
    MultiscaleSolutiond sol = solveMultiscale(micro, map);
    if (spec.hasHomogenizedReference())
        sol.uHomogenized = homogenizedCurve(spec, micro.mesh);

    std::filesystem::create_directories(config.outDir);
    const std::filesystem::path out(config.outDir);

    if (config.dumpSolution) {
        std::string csv = sol.uHomogenized ? "x,u_ref,u_ms,u_hom\n" : "x,u_ref,u_ms\n";
        for (Eigen::Index j = 0; j < micro.mesh.nodes.size(); ++j) {
            csv += detail::g17(micro.mesh.nodes[j]);
            csv += ',' + detail::g17(sol.uReference[j]);
            csv += ',' + detail::g17(sol.uMultiscale[j]);
            if (sol.uHomogenized)
                csv += ',' + detail::g17((*sol.uHomogenized)[j]);
            csv += '\n';
        }
        detail::writeFile(out / "solution.csv", csv);
    }

    if (config.dumpBasis >= 0) {
        const BasisTabled table = reconstructBasis(micro, map);
        VectorXd hat = VectorXd::Zero(table.macroNodeCount());
        hat[config.dumpBasis] = 1.0;
        const VectorXd psi = prolongate(table, hat);
        std::string csv = "x,psi\n";
        for (Eigen::Index j = 0; j < micro.mesh.nodes.size(); ++j)
            csv += detail::g17(micro.mesh.nodes[j]) + "," + detail::g17(psi[j]) + "\n";
        detail::writeFile(out / ("basis_K" + std::to_string(config.dumpBasis) + ".csv"), csv);
    }

    if (config.dumpMacro) {
        const MacroSystemd macro = assembleMacro(micro, map);
        detail::writeFile(out / "macro.json", toJson(macro.system).dump(2) + "\n");
    }

    SolveSummary summary;
    const VectorXd diff = sol.uMultiscale - sol.uReference;
    summary.energyError = energyNorm(diff, micro) / energyNorm(sol.uReference, micro);
    summary.l2ErrorValue = l2Error(sol.uReference, sol.uMultiscale, micro.mesh);
    return summary;
}

} // namespace ams1d

#endif
