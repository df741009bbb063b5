#ifndef AMS1D_MS_BASIS_HPP
#define AMS1D_MS_BASIS_HPP

#include <string>
#include <vector>

#include "ams1d/errors.hpp"
#include "ams1d/mesh.hpp"
#include "ams1d/micro_assembly.hpp"
#include "ams1d/problems.hpp"
#include "ams1d/tridiagonal.hpp"

namespace ams1d {

/// Values of the two local basis functions of each macro interval at the
/// micro nodes it contains: psiPlus rises from 0 to 1 across the interval,
/// psiMinus is its complement.  The nodal hat function of macro node K is an
/// assembly view: psiPlus of interval K joined with psiMinus of interval
/// K+1.  Tables are stored per interval to match the local formulas.
template <class Scalar>
struct BasisTable {
    using Vector = VectorX<Scalar>;

    Eigen::VectorXi macroNodes;    ///< micro node index per macro node
    std::vector<Vector> psiPlus;   ///< per interval, length intervalSize+1
    std::vector<Vector> psiMinus;

    Eigen::Index intervals() const { return static_cast<Eigen::Index>(psiPlus.size()); }
    Eigen::Index macroNodeCount() const { return macroNodes.size(); }
    Eigen::Index microNodeCount() const { return macroNodes[macroNodes.size() - 1] + 1; }

    template <class Other>
    BasisTable<Other> cast() const {
        BasisTable<Other> t;
        t.macroNodes = macroNodes;
        t.psiPlus.reserve(psiPlus.size());
        t.psiMinus.reserve(psiMinus.size());
        for (const auto& v : psiPlus)
            t.psiPlus.push_back(v.template cast<Other>());
        for (const auto& v : psiMinus)
            t.psiMinus.push_back(v.template cast<Other>());
        return t;
    }
};

using BasisTabled = BasisTable<double>;

namespace detail {

/// Basis values from running sums d_0, d_0+d_1, ... where prefix holds the
/// running sums with prefix[0] = 0.  psiPlus[l] = prefix[l]/prefix[last];
/// psiMinus uses the complementary sum through one subtraction from the same
/// denominator, which keeps psiPlus + psiMinus within a few ulps of 1 at
/// every node regardless of the interval length.
template <class Scalar>
void basisFromPrefix(const VectorX<Scalar>& prefix, VectorX<Scalar>& plus,
                     VectorX<Scalar>& minus) {
    const Eigen::Index m = prefix.size();
    const Scalar total = prefix[m - 1];
    plus.resize(m);
    minus.resize(m);
    for (Eigen::Index l = 0; l < m; ++l) {
        plus[l] = prefix[l] / total;
        minus[l] = (total - prefix[l]) / total;
    }
    plus[0] = Scalar(0);
    plus[m - 1] = Scalar(1);
    minus[0] = Scalar(1);
    minus[m - 1] = Scalar(0);
}

} // namespace detail

/// Basis reconstruction from matrix entries alone: within each macro
/// interval the values at micro nodes are cumulative sums of the inverses of
/// the off-diagonal entries, normalized by the full sum.  Only the
/// off-diagonal array is read; diagonal and load never enter.
template <class Scalar>
BasisTable<Scalar> reconstructBasis(const MicroSystem<Scalar>& micro, const CoarseningMap& map) {
    if (!map.valid(micro.system.lower.size()))
        throw ShapeMismatch("reconstructBasis: coarsening map does not nest in the system");
    BasisTable<Scalar> table;
    table.macroNodes = map.macroNodes;
    table.psiPlus.resize(map.intervals());
    table.psiMinus.resize(map.intervals());
    for (Eigen::Index k = 0; k < map.intervals(); ++k) {
        const Eigen::Index begin = map.microNode(k);
        const Eigen::Index len = map.intervalSize(k);
        const VectorX<Scalar> prefix =
            inversePrefixSums<Scalar>(micro.system.lower.segment(begin, len));
        const Scalar total = prefix[len];
        if (!std::isfinite(static_cast<double>(total)) || !(total < Scalar(0)))
            throw DegenerateInterval("reconstructBasis: degenerate harmonic sum in interval " +
                                     std::to_string(k + 1));
        detail::basisFromPrefix(prefix, table.psiPlus[k], table.psiMinus[k]);
    }
    return table;
}

/// The same basis from the coefficient directly: cumulative midpoint-rule
/// integrals of 1/A across each macro interval.  Serves as the second route
/// against reconstructBasis in tests.
template <class Scalar>
BasisTable<Scalar> analyticBasis(const ProblemSpec<Scalar>& spec, const CoarseningMap& map,
                                 const MicroMesh<Scalar>& mesh) {
    if (spec.kind != ProblemKind::Analytic)
        throw Error("analyticBasis: analytic problem required");
    if (!map.valid(mesh.intervals()))
        throw ShapeMismatch("analyticBasis: coarsening map does not nest in the mesh");
    const VectorX<Scalar> h = mesh.spacings();
    const VectorX<Scalar> mid = mesh.midpoints();

    BasisTable<Scalar> table;
    table.macroNodes = map.macroNodes;
    table.psiPlus.resize(map.intervals());
    table.psiMinus.resize(map.intervals());
    for (Eigen::Index k = 0; k < map.intervals(); ++k) {
        const Eigen::Index begin = map.microNode(k);
        const Eigen::Index len = map.intervalSize(k);
        VectorX<Scalar> prefix(len + 1);
        Scalar running = Scalar(0);
        prefix[0] = running;
        for (Eigen::Index j = 0; j < len; ++j) {
            const Scalar a = spec.coefficient(mid[begin + j]);
            if (!(a > Scalar(0)))
                throw NonpositiveCoefficient("analyticBasis: A <= 0 at midpoint " +
                                             std::to_string(begin + j));
            running += h[begin + j] / a;
            prefix[j + 1] = running;
        }
        // negate so the shared normalization helper sees the signed sums
        prefix = -prefix;
        detail::basisFromPrefix(prefix, table.psiPlus[k], table.psiMinus[k]);
    }
    return table;
}

/// Energy-minimizing slope of the piecewise-linear basis approximation on
/// one micro interval: beta * h_j / integral of A over the interval, where
/// beta is the reciprocal of the midpoint-rule integral of 1/A over the
/// whole macro interval.  Equals 1 whenever A is constant.
template <class Scalar>
Scalar optimalSlope(const ProblemSpec<Scalar>& spec, const MicroMesh<Scalar>& mesh,
                    const CoarseningMap& map, Eigen::Index macroInterval,
                    Eigen::Index microIntervalWithin) {
    if (spec.kind != ProblemKind::Analytic)
        throw Error("optimalSlope: analytic problem required");
    const VectorX<Scalar> h = mesh.spacings();
    const VectorX<Scalar> mid = mesh.midpoints();
    const Eigen::Index begin = map.microNode(macroInterval);
    const Eigen::Index len = map.intervalSize(macroInterval);

    Scalar invIntegral = Scalar(0);
    for (Eigen::Index j = 0; j < len; ++j) {
        const Scalar a = spec.coefficient(mid[begin + j]);
        if (!(a > Scalar(0)))
            throw NonpositiveCoefficient("optimalSlope: A <= 0 at midpoint " +
                                         std::to_string(begin + j));
        invIntegral += h[begin + j] / a;
    }
    const Scalar beta = Scalar(1) / invIntegral;
    const Eigen::Index t = begin + microIntervalWithin;
    const Scalar integralA = h[t] * spec.coefficient(mid[t]);
    return beta * h[t] / integralA;
}

/// Micro nodal values of the coarse function with nodal coefficients eta,
/// assembled interval by interval (the matrix-free application of the
/// prolongation).
template <class Scalar>
VectorX<Scalar> prolongate(const BasisTable<Scalar>& table, const VectorX<Scalar>& eta) {
    if (eta.size() != table.macroNodeCount())
        throw ShapeMismatch("prolongate: coefficient count does not match macro nodes");
    VectorX<Scalar> u(table.microNodeCount());
    for (Eigen::Index k = 0; k < table.intervals(); ++k) {
        const Eigen::Index begin = table.macroNodes[k];
        const auto& plus = table.psiPlus[k];
        const auto& minus = table.psiMinus[k];
        for (Eigen::Index l = 0; l < plus.size(); ++l)
            u[begin + l] = eta[k] * minus[l] + eta[k + 1] * plus[l];
    }
    return u;
}

/// Dense prolongation matrix (micro nodes x macro nodes).  Column K holds
/// the nodal hat of macro node K; hat sparsity means column K is supported
/// on the micro nodes of intervals K and K+1 only.  Used by test oracles;
/// the production path applies the table per interval instead.
template <class Scalar>
MatrixX<Scalar> prolongationMatrix(const BasisTable<Scalar>& table) {
    MatrixX<Scalar> p = MatrixX<Scalar>::Zero(table.microNodeCount(), table.macroNodeCount());
    for (Eigen::Index k = 0; k < table.intervals(); ++k) {
        const Eigen::Index begin = table.macroNodes[k];
        const auto& plus = table.psiPlus[k];
        const auto& minus = table.psiMinus[k];
        for (Eigen::Index l = 0; l < plus.size(); ++l) {
            p(begin + l, k) = minus[l];
            p(begin + l, k + 1) = plus[l];
        }
    }
    return p;
}

/// Coarse system as the dense triple product: stiffness P^T A P and load
/// P^T b.  The hat sparsity of P makes the product tridiagonal; any entry
/// beyond the three diagonals above 1e-12 in magnitude is an error.
template <class Scalar>
TridiagonalSystem<Scalar> galerkinProject(const TridiagonalSystem<Scalar>& fine,
                                          const BasisTable<Scalar>& table) {
    if (!fine.shapeValid())
        throw ShapeMismatch("galerkinProject: inconsistent fine system");
    if (fine.rows() != table.microNodeCount())
        throw ShapeMismatch("galerkinProject: basis table spans " +
                            std::to_string(table.microNodeCount()) + " micro nodes, system has " +
                            std::to_string(fine.rows()) + " rows");
    const MatrixX<Scalar> p = prolongationMatrix(table);
    const MatrixX<Scalar> coarse = p.transpose() * (denseMatrix(fine) * p);
    const Eigen::Index m = coarse.rows();
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            if (std::abs(static_cast<double>(i - j)) > 1 &&
                std::abs(static_cast<double>(coarse(i, j))) > 1e-12)
                throw NotTridiagonal("galerkinProject: entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") is not negligible");
    TridiagonalSystem<Scalar> out;
    out.diag = coarse.diagonal();
    out.lower = coarse.template diagonal<-1>();
    out.rhs = p.transpose() * fine.rhs;
    return out;
}

} // namespace ams1d

#endif
