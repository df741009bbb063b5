#ifndef AMS1D_ERROR_NORMS_HPP
#define AMS1D_ERROR_NORMS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ams1d/mesh.hpp"
#include "ams1d/micro_assembly.hpp"
#include "ams1d/pipeline.hpp"
#include "ams1d/problems.hpp"
#include "ams1d/rng.hpp"

namespace ams1d {

/// Coefficient-weighted discrete energy norm of a micro nodal function:
/// sqrt of the sum over intervals of |lower_j| (u_j - u_{j-1})^2.  The
/// off-diagonal entries are negative, so the magnitude keeps the radicand
/// nonnegative; with the row-sum diagonal structure the square equals the
/// quadratic form u^T A u.
template <class Scalar>
Scalar energyNorm(const VectorX<Scalar>& u, const MicroSystem<Scalar>& micro) {
    if (u.size() != micro.system.rows())
        throw LengthError("energyNorm: nodal vector does not match the system");
    Scalar sum = Scalar(0);
    for (Eigen::Index j = 0; j < micro.system.lower.size(); ++j) {
        const Scalar du = u[j + 1] - u[j];
        sum += std::abs(micro.system.lower[j]) * du * du;
    }
    return std::sqrt(sum);
}

/// L2 norm of a piecewise-linear nodal function, integrated exactly:
/// sum of h_j/3 (w_{j-1}^2 + w_{j-1} w_j + w_j^2).
template <class Scalar>
Scalar l2Norm(const VectorX<Scalar>& w, const MicroMesh<Scalar>& mesh) {
    if (w.size() != mesh.nodes.size())
        throw LengthError("l2Norm: nodal vector does not match the mesh");
    Scalar sum = Scalar(0);
    for (Eigen::Index j = 0; j < mesh.intervals(); ++j) {
        const Scalar h = mesh.nodes[j + 1] - mesh.nodes[j];
        sum += h / Scalar(3) * (w[j] * w[j] + w[j] * w[j + 1] + w[j + 1] * w[j + 1]);
    }
    return std::sqrt(sum);
}

/// Relative L2 distance ||u - v|| / ||v||.
template <class Scalar>
Scalar l2Error(const VectorX<Scalar>& u, const VectorX<Scalar>& v, const MicroMesh<Scalar>& mesh) {
    const Scalar ref = l2Norm(v, mesh);
    if (!(ref > Scalar(0)))
        throw ZeroReference("l2Error: reference function has zero norm");
    return l2Norm<Scalar>(u - v, mesh) / ref;
}

template <class Scalar>
struct ConvergenceRow {
    int macroIntervals = 0;
    Scalar energyError = Scalar(0);
    Scalar l2ErrorValue = Scalar(0);
    std::optional<Scalar> energyOrder; ///< log2 of the error drop from the previous row
    std::optional<Scalar> l2Order;
};

/// Per-sweep error table plus the metadata needed to reproduce it.
template <class Scalar>
struct ConvergenceReport {
    std::string problem;
    std::string meshKind; ///< "uniform" or "random"
    Eigen::Index microIntervals = 0;
    std::uint64_t seed = 0;
    std::vector<ConvergenceRow<Scalar>> rows;
};

using ConvergenceReportd = ConvergenceReport<double>;

enum class MeshKind { Uniform, Random };

inline std::string toString(MeshKind kind) {
    return kind == MeshKind::Uniform ? "uniform" : "random";
}

/// One micro system per (problem, mesh kind, seed, resolution).  The seed
/// drives the mesh for analytic problems on random meshes and the entry
/// draws for raw algebraic problems; external systems ignore it.
template <class Scalar>
MicroSystem<Scalar> buildMicroSystem(const ProblemSpec<Scalar>& spec, Eigen::Index microIntervals,
                                     MeshKind meshKind, std::uint64_t seed) {
    switch (spec.kind) {
    case ProblemKind::Analytic: {
        if (meshKind == MeshKind::Random) {
            SeededRng rng(seed);
            return assembleMicro(spec, randomMicroMesh<Scalar>(microIntervals, rng));
        }
        return assembleMicro(spec, uniformMicroMesh<Scalar>(microIntervals));
    }
    case ProblemKind::RawAlgebraic: {
        ProblemSpec<Scalar> seeded = spec;
        seeded.seed = seed;
        return materializeRaw(seeded, microIntervals);
    }
    case ProblemKind::External:
        return microFromExternal(spec);
    }
    throw Error("buildMicroSystem: unknown problem kind");
}

/// One pipeline run per coarse resolution against a single fixed micro
/// system.  The energy error is E(u_ms - u_ref)/E(u_ref); the L2 error is
/// ||u_ref - u_ms||/||u_ms||.  Reduction orders are printed on the finer
/// row of each consecutive pair.
template <class Scalar>
ConvergenceReport<Scalar> convergenceStudy(const MicroSystem<Scalar>& micro,
                                           const std::vector<int>& macroIntervalCounts) {
    ConvergenceReport<Scalar> report;
    report.microIntervals = micro.system.lower.size();
    for (int nH : macroIntervalCounts) {
        const CoarseningMap map = buildCoarsening(micro.mesh, nH);
        const MultiscaleSolution<Scalar> sol = solveMultiscale(micro, map);
        ConvergenceRow<Scalar> row;
        row.macroIntervals = nH;
        const VectorX<Scalar> diff = sol.uMultiscale - sol.uReference;
        const Scalar refEnergy = energyNorm(sol.uReference, micro);
        if (!(refEnergy > Scalar(0)))
            throw ZeroReference("convergenceStudy: reference solution has zero energy");
        row.energyError = energyNorm(diff, micro) / refEnergy;
        row.l2ErrorValue = l2Error(sol.uReference, sol.uMultiscale, micro.mesh);
        if (!report.rows.empty()) {
            const auto& prev = report.rows.back();
            if (prev.energyError > Scalar(0) && row.energyError > Scalar(0))
                row.energyOrder = std::log2(prev.energyError / row.energyError);
            if (prev.l2ErrorValue > Scalar(0) && row.l2ErrorValue > Scalar(0))
                row.l2Order = std::log2(prev.l2ErrorValue / row.l2ErrorValue);
        }
        report.rows.push_back(row);
    }
    return report;
}

/// Convenience overload: builds the micro system from the problem spec and
/// fills the report metadata.
template <class Scalar>
ConvergenceReport<Scalar> convergenceStudy(const ProblemSpec<Scalar>& spec,
                                           Eigen::Index microIntervals,
                                           const std::vector<int>& macroIntervalCounts,
                                           MeshKind meshKind, std::uint64_t seed) {
    for (int nH : macroIntervalCounts)
        if (nH > microIntervals)
            throw TooCoarse("convergenceStudy: macro interval count " + std::to_string(nH) +
                            " exceeds micro interval count");
    const MicroSystem<Scalar> micro = buildMicroSystem(spec, microIntervals, meshKind, seed);
    ConvergenceReport<Scalar> report = convergenceStudy(micro, macroIntervalCounts);
    report.problem = spec.name;
    report.meshKind = toString(meshKind);
    report.seed = seed;
    return report;
}

} // namespace ams1d

#endif
