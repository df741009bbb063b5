#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ams1d/ams1d.hpp"
#include "support.hpp"

using namespace ams1d;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag)
        : path(std::filesystem::temp_directory_path() / ("ams1d_" + tag)) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("runConvergence writes byte-identical reports for a fixed config") {
    RunConfig config;
    config.problem = "ex3";
    config.microIntervals = 256;
    config.macroIntervals = {2, 4, 8, 16};
    config.meshKind = MeshKind::Uniform;
    config.seed = 7;
    config.noTimestamp = true;

    TempDir a("conv_a"), b("conv_b");
    config.outDir = a.path.string();
    runConvergence(config);
    config.outDir = b.path.string();
    runConvergence(config);

    CHECK(slurp(a.path / "convergence.csv") == slurp(b.path / "convergence.csv"));
    CHECK(slurp(a.path / "convergence.json") == slurp(b.path / "convergence.json"));

    const std::string csv = slurp(a.path / "convergence.csv");
    CHECK(csv.rfind("N_H,e_energy,order_energy,e_L2,order_L2\n", 0) == 0);
    CHECK(csv.find("\n2,") != std::string::npos);

    const auto j = nlohmann::json::parse(slurp(a.path / "convergence.json"));
    CHECK(j["meta"]["problem"] == "ex3");
    CHECK(j["meta"]["seed"] == 7);
    CHECK(j["rows"].size() == 4);
    CHECK(j["rows"][0]["order_energy"].is_null());
    CHECK(!j["meta"].contains("generated_at"));
}

TEST_CASE("random-mesh sweeps are reproducible for the same seed") {
    RunConfig config;
    config.problem = "ex1";
    config.microIntervals = 128;
    config.macroIntervals = {2, 4, 8};
    config.meshKind = MeshKind::Random;
    config.seed = 11;
    config.noTimestamp = true;

    TempDir a("rand_a"), b("rand_b");
    config.outDir = a.path.string();
    const auto r1 = runConvergence(config);
    config.outDir = b.path.string();
    const auto r2 = runConvergence(config);
    CHECK(slurp(a.path / "convergence.json") == slurp(b.path / "convergence.json"));
    CHECK(r1.rows[2].energyError == r2.rows[2].energyError);
}

TEST_CASE("runSolve emits the requested dumps") {
    RunConfig config;
    config.problem = "ex1";
    config.microIntervals = 64;
    config.macroIntervals = {8};
    config.seed = 1;
    config.dumpSolution = true;
    config.dumpBasis = 1;
    config.dumpMacro = true;
    config.noTimestamp = true;

    TempDir dir("solve");
    config.outDir = dir.path.string();
    const SolveSummary summary = runSolve(config);
    CHECK(summary.energyError > 0.0);
    CHECK(summary.l2ErrorValue > 0.0);

    const std::string solution = slurp(dir.path / "solution.csv");
    CHECK(solution.rfind("x,u_ref,u_ms,u_hom\n", 0) == 0); // ex1 carries a homogenized curve
    CHECK(std::count(solution.begin(), solution.end(), '\n') == 66);

    const std::string basis = slurp(dir.path / "basis_K1.csv");
    CHECK(basis.rfind("x,psi\n", 0) == 0);

    const auto macro = nlohmann::json::parse(slurp(dir.path / "macro.json"));
    CHECK(macro["diag"].size() == 9);
    CHECK(macro["lower"].size() == 8);
    CHECK(macro["rhs"].size() == 9);

    // the dumped macro system reloads bit-identically
    const auto reloaded = tridiagonalFromJson<double>(macro);
    const MicroSystemd micro =
        buildMicroSystem(example1<double>(), 64, MeshKind::Uniform, 1);
    const MacroSystemd direct = assembleMacro(micro, buildCoarsening(micro.mesh, 8));
    CHECK(reloaded.diag == direct.system.diag);
    CHECK(reloaded.lower == direct.system.lower);
    CHECK(reloaded.rhs == direct.system.rhs);
}

TEST_CASE("basis dump of a raw problem covers the whole domain") {
    RunConfig config;
    config.problem = "ex2";
    config.microIntervals = 128;
    config.macroIntervals = {4};
    config.seed = 5;
    config.dumpBasis = 1;
    config.noTimestamp = true;

    TempDir dir("basis");
    config.outDir = dir.path.string();
    runSolve(config);
    const std::string basis = slurp(dir.path / "basis_K1.csv");
    CHECK(std::count(basis.begin(), basis.end(), '\n') == 130); // header + 129 nodes
}

TEST_CASE("config validation failures") {
    RunConfig config;
    config.microIntervals = 1024;
    config.macroIntervals = {2048};
    CHECK_THROWS_AS(validateConfig(config), ConfigError);

    config.macroIntervals = {4, 2};
    CHECK_THROWS_AS(validateConfig(config), ConfigError);

    config.macroIntervals = {2, 3};
    CHECK_THROWS_AS(validateConfig(config), ConfigError);

    config.macroIntervals = {};
    CHECK_THROWS_AS(validateConfig(config), ConfigError);

    config.macroIntervals = {2, 4, 8};
    validateConfig(config); // nested ascending counts pass

    RunConfig solveConfig;
    solveConfig.macroIntervals = {4, 8};
    CHECK_THROWS_AS(runSolve(solveConfig), ConfigError);

    RunConfig badProblem;
    badProblem.problem = "ex9";
    CHECK_THROWS_AS(runConvergence(badProblem), ConfigError);
}

TEST_CASE("external systems flow through solve with a macro dump") {
    TempDir dir("external");
    const auto sysPath = dir.path / "system.json";
    {
        SeededRng rng(300);
        const MicroSystemd micro = ams1d::testing::randomMicroSystem(rng, 32);
        std::ofstream out(sysPath);
        out << toJson(micro.system).dump();
    }
    RunConfig config;
    config.problem = "external:" + sysPath.string();
    config.microIntervals = 32;
    config.macroIntervals = {4};
    config.dumpMacro = true;
    config.noTimestamp = true;
    config.outDir = (dir.path / "out").string();
    runSolve(config);
    const auto macro = nlohmann::json::parse(slurp(dir.path / "out" / "macro.json"));
    CHECK(macro["diag"].size() == 5);
}
