#ifndef AMS1D_PROBLEMS_HPP
#define AMS1D_PROBLEMS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include "ams1d/errors.hpp"
#include "ams1d/rng.hpp"
#include "ams1d/serialization.hpp"
#include "ams1d/tridiagonal.hpp"

namespace ams1d {

enum class ProblemKind { Analytic, RawAlgebraic, External };

/// Provenance of a micro-scale system.
///
/// Analytic problems carry the coefficient A(x) > 0 and the source through
/// its antiderivative g (f = dg/dx), optionally with a homogenized reference
/// curve.  RawAlgebraic problems carry only a variant id and a seed; the
/// magnitudes of the off-diagonal entries and the load are drawn on demand.
/// External problems wrap a system read from a file.
template <class Scalar>
struct ProblemSpec {
    ProblemKind kind = ProblemKind::Analytic;
    std::string name;

    std::function<Scalar(Scalar)> coefficient;
    std::function<Scalar(Scalar)> sourceAntiderivative;
    std::function<Scalar(Scalar)> homogenizedSolution; // may be empty

    int rawVariant = 0; // 2..5
    std::uint64_t seed = 0;

    TridiagonalSystem<Scalar> external;

    bool hasHomogenizedReference() const {
        return static_cast<bool>(homogenizedSolution);
    }
};

using ProblemSpecd = ProblemSpec<double>;

/// Oscillatory-coefficient model problem with f = -1 (so g(x) = -x, pinned
/// by g(0) = 0) and a closed-form homogenized reference.
template <class Scalar>
ProblemSpec<Scalar> example1() {
    ProblemSpec<Scalar> spec;
    spec.kind = ProblemKind::Analytic;
    spec.name = "ex1";
    const Scalar eps = Scalar(1) / Scalar(10);
    spec.coefficient = [eps](Scalar x) {
        const Scalar c = std::cos(Scalar(2) * Scalar(EIGEN_PI) * x / eps);
        return Scalar(2) / Scalar(3) * (Scalar(1) + x) * (Scalar(1) + c * c);
    };
    spec.sourceAntiderivative = [](Scalar x) { return -x; };
    spec.homogenizedSolution = [](Scalar x) {
        return Scalar(3) / (Scalar(2) * std::sqrt(Scalar(2))) *
               (x - std::log1p(x) / std::log(Scalar(2)));
    };
    return spec;
}

namespace detail {

constexpr double kMinMagnitude = 1e-12;

inline double rawMagnitudeFormula(int variant, Eigen::Index j, double u) {
    switch (variant) {
    case 2:
        return 2.0 - 0.5 * std::cos(u * 17.7 * static_cast<double>(j) * EIGEN_PI);
    case 3:
        return static_cast<double>(j) *
               (2.0 - 0.5 * std::cos(u * 17.7 * static_cast<double>(j) * EIGEN_PI));
    case 4:
        return u;
    case 5:
        return static_cast<double>(j) * u;
    default:
        throw InvalidCount("raw variant must be one of 2,3,4,5");
    }
}

} // namespace detail

/// Off-diagonal magnitudes c_j > 0 for micro intervals j = 1..count.  A draw
/// whose magnitude falls below 1e-12 is redrawn once; a second failure is an
/// error rather than a silently near-singular entry.
template <class Rng>
VectorX<double> rawMagnitudes(int variant, Eigen::Index count, Rng& rng) {
    VectorX<double> c(count);
    for (Eigen::Index k = 0; k < count; ++k) {
        const Eigen::Index j = k + 1;
        double value = detail::rawMagnitudeFormula(variant, j, rng.next());
        if (value < detail::kMinMagnitude)
            value = detail::rawMagnitudeFormula(variant, j, rng.next());
        if (value < detail::kMinMagnitude)
            throw DegenerateCoefficient("raw magnitude below 1e-12 at interval " +
                                        std::to_string(j));
        c[k] = value;
    }
    return c;
}

/// Load entries b_j = rand for nodes 0..count.
template <class Rng>
VectorX<double> rawLoad(Eigen::Index count, Rng& rng) {
    VectorX<double> b(count + 1);
    for (Eigen::Index k = 0; k <= count; ++k)
        b[k] = rng.next();
    return b;
}

/// Randomized algebraic problems.  Variants: 2 periodic magnitudes in
/// [1.5, 2.5]; 3 the same scaled by the interval index; 4 plain uniform
/// draws; 5 uniform draws scaled by the interval index.
template <class Scalar>
ProblemSpec<Scalar> exampleRandom(int variant, std::uint64_t seed) {
    if (variant < 2 || variant > 5)
        throw InvalidCount("exampleRandom: variant must be one of 2,3,4,5");
    ProblemSpec<Scalar> spec;
    spec.kind = ProblemKind::RawAlgebraic;
    spec.name = "ex" + std::to_string(variant);
    spec.rawVariant = variant;
    spec.seed = seed;
    return spec;
}

/// Reads an externally supplied system from the tridiagonal json format and
/// validates the M-matrix sign pattern.  Interior row sums more negative
/// than -1e-10 relative to the diagonal get a warning on stderr only; the
/// assembly identities that motivate the sign checks are not enforceable on
/// foreign data.
template <class Scalar>
ProblemSpec<Scalar> loadExternal(const std::string& path) {
    ProblemSpec<Scalar> spec;
    spec.kind = ProblemKind::External;
    spec.name = "external:" + path;
    spec.external = loadTridiagonalFile<Scalar>(path);

    const auto& sys = spec.external;
    for (Eigen::Index k = 0; k < sys.lower.size(); ++k)
        if (!(sys.lower[k] < Scalar(0)))
            throw SignStructureError("external system: lower[" + std::to_string(k) +
                                     "] is not negative");
    for (Eigen::Index i = 0; i < sys.diag.size(); ++i)
        if (!(sys.diag[i] > Scalar(0)))
            throw SignStructureError("external system: diag[" + std::to_string(i) +
                                     "] is not positive");
    for (Eigen::Index i = 1; i + 1 < sys.rows(); ++i) {
        const Scalar rowSum = sys.diag[i] + sys.lower[i - 1] + sys.lower[i];
        if (rowSum < -Scalar(1e-10) * sys.diag[i])
            std::cerr << "warning: external system row " << i
                      << " has negative row sum " << rowSum << "\n";
    }
    return spec;
}

} // namespace ams1d

#endif
