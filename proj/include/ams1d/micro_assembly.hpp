#ifndef AMS1D_MICRO_ASSEMBLY_HPP
#define AMS1D_MICRO_ASSEMBLY_HPP

#include <string>

#include "ams1d/errors.hpp"
#include "ams1d/mesh.hpp"
#include "ams1d/problems.hpp"
#include "ams1d/rng.hpp"
#include "ams1d/tridiagonal.hpp"

namespace ams1d {

/// Micro-scale system over all nodes, boundary rows included.  The boundary
/// rows are kept as data (they feed the source recovery); Dirichlet values
/// are imposed only inside the solves.
template <class Scalar>
struct MicroSystem {
    TridiagonalSystem<Scalar> system;
    MicroMesh<Scalar> mesh;
    VectorX<Scalar> midpointCoefficient; ///< A at interval midpoints; empty unless analytic
};

using MicroSystemd = MicroSystem<double>;

namespace detail {

/// Diagonal rebuilt from the off-diagonal entries so that interior row sums
/// vanish exactly: diag_j = -lower_j - lower_{j+1}, boundary rows one term.
template <class Scalar>
VectorX<Scalar> diagonalFromLower(const VectorX<Scalar>& lower) {
    const Eigen::Index n = lower.size();
    VectorX<Scalar> diag(n + 1);
    diag[0] = -lower[0];
    for (Eigen::Index i = 1; i < n; ++i)
        diag[i] = -lower[i - 1] - lower[i];
    diag[n] = -lower[n - 1];
    return diag;
}

} // namespace detail

/// P1 assembly with the midpoint rule: lower_j = -A(mid_j)/h_j, the diagonal
/// from row sums, and load entries as differences of g at interval midpoints
/// (with one-sided differences against g at the domain ends in the boundary
/// rows).
template <class Scalar>
MicroSystem<Scalar> assembleMicro(const ProblemSpec<Scalar>& spec, const MicroMesh<Scalar>& mesh) {
    if (spec.kind != ProblemKind::Analytic)
        throw Error("assembleMicro: analytic problem required");
    const Eigen::Index n = mesh.intervals();
    const VectorX<Scalar> h = mesh.spacings();
    const VectorX<Scalar> mid = mesh.midpoints();

    VectorX<Scalar> coeff(n);
    VectorX<Scalar> lower(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        coeff[j] = spec.coefficient(mid[j]);
        if (!(coeff[j] > Scalar(0)))
            throw NonpositiveCoefficient("assembleMicro: A <= 0 at midpoint " +
                                         std::to_string(j));
        lower[j] = -coeff[j] / h[j];
    }

    const auto& g = spec.sourceAntiderivative;
    VectorX<Scalar> rhs(n + 1);
    rhs[0] = g(mid[0]) - g(mesh.nodes[0]);
    for (Eigen::Index j = 1; j < n; ++j)
        rhs[j] = g(mid[j]) - g(mid[j - 1]);
    rhs[n] = g(mesh.nodes[n]) - g(mid[n - 1]);

    return {{detail::diagonalFromLower(lower), lower, rhs}, mesh, coeff};
}

/// Materializes a raw algebraic problem: magnitudes and load are drawn from
/// a generator seeded by the spec, so the same spec always produces the
/// identical system.  No geometry exists for these problems; a uniform mesh
/// is attached for quadrature and plotting output.
template <class Scalar>
MicroSystem<Scalar> materializeRaw(const ProblemSpec<Scalar>& spec, Eigen::Index microIntervals) {
    if (spec.kind != ProblemKind::RawAlgebraic)
        throw Error("materializeRaw: raw algebraic problem required");
    if (microIntervals < 1)
        throw InvalidCount("materializeRaw: need at least one interval");
    SeededRng rng(spec.seed);
    const VectorX<double> c = rawMagnitudes(spec.rawVariant, microIntervals, rng);
    const VectorX<double> b = rawLoad(microIntervals, rng);

    VectorX<Scalar> lower = (-c).template cast<Scalar>();
    return {{detail::diagonalFromLower(lower), lower, b.template cast<Scalar>()},
            uniformMicroMesh<Scalar>(microIntervals),
            VectorX<Scalar>()};
}

/// Wraps an externally supplied system with a uniform mesh attached.
template <class Scalar>
MicroSystem<Scalar> microFromExternal(const ProblemSpec<Scalar>& spec) {
    if (spec.kind != ProblemKind::External)
        throw Error("microFromExternal: external problem required");
    if (spec.external.rows() < 2)
        throw LengthError("microFromExternal: need at least two rows");
    return {spec.external, uniformMicroMesh<Scalar>(spec.external.rows() - 1),
            VectorX<Scalar>()};
}

/// Builds the micro system for any problem kind.
template <class Scalar>
MicroSystem<Scalar> materializeMicro(const ProblemSpec<Scalar>& spec,
                                     const MicroMesh<Scalar>& mesh) {
    switch (spec.kind) {
    case ProblemKind::Analytic:
        return assembleMicro(spec, mesh);
    case ProblemKind::RawAlgebraic:
        return materializeRaw(spec, mesh.intervals());
    case ProblemKind::External:
        return microFromExternal(spec);
    }
    throw Error("materializeMicro: unknown problem kind");
}

/// Fine-scale reference solution: the interior system solved with
/// homogeneous Dirichlet values, returned over all nodes.
template <class Scalar>
VectorX<Scalar> microReferenceSolve(const MicroSystem<Scalar>& micro) {
    const Eigen::Index n = micro.system.rows() - 1;
    VectorX<Scalar> u = VectorX<Scalar>::Zero(n + 1);
    if (n >= 2)
        u.segment(1, n - 1) = thomasSolve(interiorSystem(micro.system));
    return u;
}

} // namespace ams1d

#endif
