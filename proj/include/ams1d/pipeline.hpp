#ifndef AMS1D_PIPELINE_HPP
#define AMS1D_PIPELINE_HPP

#include <optional>

#include "ams1d/macro_assembly.hpp"
#include "ams1d/micro_assembly.hpp"
#include "ams1d/ms_basis.hpp"
#include "ams1d/problems.hpp"

namespace ams1d {

template <class Scalar>
struct MultiscaleSolution {
    VectorX<Scalar> eta;         ///< macro nodal coefficients, zero at both ends
    VectorX<Scalar> uMultiscale; ///< coarse solution prolongated to every micro node
    VectorX<Scalar> uReference;  ///< fine-scale reference solution
    std::optional<VectorX<Scalar>> uHomogenized;
};

using MultiscaleSolutiond = MultiscaleSolution<double>;

/// Micro system in, multiscale solution at micro nodes out: recover the
/// antiderivative samples, assemble the coarse system, solve its interior
/// under homogeneous Dirichlet values, and prolongate through the
/// reconstructed basis.  The fine reference solve rides along.
template <class Scalar>
MultiscaleSolution<Scalar> solveMultiscale(const MicroSystem<Scalar>& micro,
                                           const CoarseningMap& map) {
    const MacroSystem<Scalar> macro = assembleMacro(micro, map);
    const Eigen::Index m = map.intervals();

    MultiscaleSolution<Scalar> sol;
    sol.eta = VectorX<Scalar>::Zero(m + 1);
    if (m >= 2)
        sol.eta.segment(1, m - 1) = thomasSolve(interiorSystem(macro.system));
    sol.uMultiscale = prolongate(reconstructBasis(micro, map), sol.eta);
    sol.uReference = microReferenceSolve(micro);
    return sol;
}

/// Pointwise samples of the homogenized reference at the micro nodes.
template <class Scalar>
VectorX<Scalar> homogenizedCurve(const ProblemSpec<Scalar>& spec, const MicroMesh<Scalar>& mesh) {
    if (!spec.hasHomogenizedReference())
        throw NoHomogenizedReference("homogenizedCurve: problem \"" + spec.name +
                                     "\" has no homogenized reference");
    VectorX<Scalar> u(mesh.nodes.size());
    for (Eigen::Index j = 0; j < mesh.nodes.size(); ++j)
        u[j] = spec.homogenizedSolution(mesh.nodes[j]);
    return u;
}

} // namespace ams1d

#endif
