#ifndef AMS1D_MACRO_ASSEMBLY_HPP
#define AMS1D_MACRO_ASSEMBLY_HPP

#include <cmath>
#include <string>

#include "ams1d/errors.hpp"
#include "ams1d/mesh.hpp"
#include "ams1d/micro_assembly.hpp"
#include "ams1d/source_recovery.hpp"
#include "ams1d/tridiagonal.hpp"

namespace ams1d {

/// Macro-scale system over all macro nodes.  harmonicSums[k] is the sum of
/// inverse off-diagonal entries of the micro system across macro interval
/// k; the entries are negative, so each sum is negative, and the coarse
/// off-diagonal 1/S_k inherits the micro sign pattern.  The sums are kept
/// because the basis reconstruction divides by the identical quantities.
template <class Scalar>
struct MacroSystem {
    TridiagonalSystem<Scalar> system;
    VectorX<Scalar> harmonicSums;
};

using MacroSystemd = MacroSystem<double>;

namespace detail {

template <class Scalar>
VectorX<Scalar> harmonicSums(const MicroSystem<Scalar>& micro, const CoarseningMap& map) {
    VectorX<Scalar> sums(map.intervals());
    for (Eigen::Index k = 0; k < map.intervals(); ++k) {
        const VectorX<Scalar> prefix = inversePrefixSums<Scalar>(
            micro.system.lower.segment(map.microNode(k), map.intervalSize(k)));
        const Scalar s = prefix[prefix.size() - 1];
        if (!std::isfinite(static_cast<double>(s)) || !(s < Scalar(0)))
            throw DegenerateInterval("macro assembly: degenerate harmonic sum in interval " +
                                     std::to_string(k + 1));
        sums[k] = s;
    }
    return sums;
}

} // namespace detail

/// Coarse stiffness purely from micro matrix entries: the off-diagonal of
/// macro interval k is 1/S_k, the diagonal collects the row-sum structure
/// -1/S_k - 1/S_{k+1} (one term in the boundary rows).  Signs are carried
/// through the negative entries exactly as in the micro system; no
/// magnitude shortcuts.
template <class Scalar>
MacroSystem<Scalar> assembleMacroStiffness(const MicroSystem<Scalar>& micro,
                                           const CoarseningMap& map) {
    if (!map.valid(micro.system.lower.size()))
        throw ShapeMismatch("assembleMacroStiffness: map does not nest in the system");
    const VectorX<Scalar> sums = detail::harmonicSums(micro, map);
    const Eigen::Index m = map.intervals();
    VectorX<Scalar> lower(m);
    for (Eigen::Index k = 0; k < m; ++k)
        lower[k] = Scalar(1) / sums[k];
    VectorX<Scalar> diag(m + 1);
    diag[0] = -lower[0];
    for (Eigen::Index k = 1; k < m; ++k)
        diag[k] = -lower[k - 1] - lower[k];
    diag[m] = -lower[m - 1];
    return {{diag, lower, VectorX<Scalar>::Zero(m + 1)}, sums};
}

/// Coarse load from micro entries and recovered antiderivative samples.
/// Each macro interval contributes the S-weighted average of its midpoint
/// samples, T_k/S_k with T_k = sum of gMid/lower across the interval;
/// interior rows take the difference of the two adjacent averages, boundary
/// rows pair one average with the pinned end samples.
template <class Scalar>
VectorX<Scalar> assembleMacroRhs(const MicroSystem<Scalar>& micro, const CoarseningMap& map,
                                 const AntiderivativeSamples<Scalar>& g) {
    if (!map.valid(micro.system.lower.size()))
        throw ShapeMismatch("assembleMacroRhs: map does not nest in the system");
    if (g.gMid.size() != micro.system.lower.size())
        throw LengthError("assembleMacroRhs: samples do not match the system");
    const Eigen::Index m = map.intervals();
    const VectorX<Scalar> sums = detail::harmonicSums(micro, map);

    VectorX<Scalar> weighted(m); // T_k / S_k
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::Index begin = map.microNode(k);
        const Eigen::Index len = map.intervalSize(k);
        Scalar t = Scalar(0);
        for (Eigen::Index j = 0; j < len; ++j)
            t += g.gMid[begin + j] / micro.system.lower[begin + j];
        weighted[k] = t / sums[k];
    }

    VectorX<Scalar> rhs(m + 1);
    rhs[0] = weighted[0] - g.g0;
    for (Eigen::Index k = 1; k < m; ++k)
        rhs[k] = weighted[k] - weighted[k - 1];
    rhs[m] = g.gEnd - weighted[m - 1];
    return rhs;
}

/// Complete coarse system: stiffness plus the load recovered from the micro
/// load vector.
template <class Scalar>
MacroSystem<Scalar> assembleMacro(const MicroSystem<Scalar>& micro, const CoarseningMap& map) {
    MacroSystem<Scalar> macro = assembleMacroStiffness(micro, map);
    macro.system.rhs = assembleMacroRhs(micro, map, recoverAntiderivative(micro.system.rhs));
    return macro;
}

} // namespace ams1d

#endif
