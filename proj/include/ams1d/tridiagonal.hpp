#ifndef AMS1D_TRIDIAGONAL_HPP
#define AMS1D_TRIDIAGONAL_HPP

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "ams1d/errors.hpp"

namespace ams1d {

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = VectorX<double>;

/// Symmetric tridiagonal linear system.  One off-diagonal array serves both
/// sides, so symmetry holds by construction and is never checked at runtime.
/// Stiffness systems assembled in this library additionally satisfy an
/// M-matrix sign pattern: lower < 0, diag > 0, interior row sums >= 0.
template <class Scalar>
struct TridiagonalSystem {
    using Vector = VectorX<Scalar>;

    Vector diag;  ///< main diagonal, one entry per row
    Vector lower; ///< sub-diagonal; lower[k] couples rows k and k+1
    Vector rhs;   ///< load vector, same length as diag

    Eigen::Index rows() const { return diag.size(); }

    bool shapeValid() const {
        return diag.size() == rhs.size() && lower.size() + 1 == diag.size();
    }

    template <class Other>
    TridiagonalSystem<Other> cast() const {
        return {diag.template cast<Other>(), lower.template cast<Other>(),
                rhs.template cast<Other>()};
    }
};

using TridiagonalSystemd = TridiagonalSystem<double>;

/// Dense copy of the system matrix, for use as a test oracle.
template <class Scalar>
MatrixX<Scalar> denseMatrix(const TridiagonalSystem<Scalar>& sys) {
    const Eigen::Index n = sys.rows();
    MatrixX<Scalar> a = MatrixX<Scalar>::Zero(n, n);
    a.diagonal() = sys.diag;
    a.template diagonal<-1>() = sys.lower;
    a.template diagonal<1>() = sys.lower;
    return a;
}

/// Direct solve by elimination without pivoting.  Elimination stays stable
/// for the diagonally dominant M-matrices this library produces; breakdown
/// is reported instead of silently dividing by a vanishing pivot.
///
/// Throws SingularSystem when a pivot magnitude falls below
/// 1e-14 * max|initial diag|.
template <class Scalar>
VectorX<Scalar> thomasSolve(const TridiagonalSystem<Scalar>& sys) {
    if (!sys.shapeValid())
        throw ShapeMismatch("thomasSolve: inconsistent diag/lower/rhs lengths");
    const Eigen::Index n = sys.rows();
    if (n == 0)
        return VectorX<Scalar>();

    const Scalar tol = Scalar(1e-14) * sys.diag.cwiseAbs().maxCoeff();
    VectorX<Scalar> d = sys.diag;
    VectorX<Scalar> b = sys.rhs;
    if (!(std::abs(d[0]) > tol))
        throw SingularSystem("thomasSolve: zero pivot in row 0");
    for (Eigen::Index i = 1; i < n; ++i) {
        const Scalar m = sys.lower[i - 1] / d[i - 1];
        d[i] -= m * sys.lower[i - 1];
        b[i] -= m * b[i - 1];
        if (!(std::abs(d[i]) > tol))
            throw SingularSystem("thomasSolve: zero pivot in row " + std::to_string(i));
    }
    VectorX<Scalar> x(n);
    x[n - 1] = b[n - 1] / d[n - 1];
    for (Eigen::Index i = n - 2; i >= 0; --i)
        x[i] = (b[i] - sys.lower[i] * x[i + 1]) / d[i];
    return x;
}

/// Restriction of a system to its interior rows/columns, i.e. the system
/// solved under homogeneous Dirichlet values at the first and last node.
template <class Scalar>
TridiagonalSystem<Scalar> interiorSystem(const TridiagonalSystem<Scalar>& sys) {
    if (!sys.shapeValid())
        throw ShapeMismatch("interiorSystem: inconsistent lengths");
    const Eigen::Index n = sys.rows();
    if (n < 2)
        throw ShapeMismatch("interiorSystem: need at least two rows");
    TridiagonalSystem<Scalar> in;
    in.diag = sys.diag.segment(1, n - 2);
    in.rhs = sys.rhs.segment(1, n - 2);
    in.lower = n > 3 ? VectorX<Scalar>(sys.lower.segment(1, n - 3)) : VectorX<Scalar>();
    return in;
}

/// Running sums of 1/v[0], 1/v[0]+1/v[1], ...  Entry 0 is zero and entry
/// v.size() is the full sum.  Both the macro assembly and the basis
/// reconstruction draw their shared denominators from this one routine, in
/// this one fixed left-to-right order, so the values agree bit for bit.
template <class Scalar, class Derived>
VectorX<Scalar> inversePrefixSums(const Eigen::MatrixBase<Derived>& v) {
    VectorX<Scalar> prefix(v.size() + 1);
    Scalar running = Scalar(0);
    prefix[0] = running;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        running += Scalar(1) / v[i];
        prefix[i + 1] = running;
    }
    return prefix;
}

} // namespace ams1d

#endif
