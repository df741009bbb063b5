#ifndef AMS1D_SOURCE_RECOVERY_HPP
#define AMS1D_SOURCE_RECOVERY_HPP

#include "ams1d/errors.hpp"
#include "ams1d/tridiagonal.hpp"

namespace ams1d {

/// Samples of the source antiderivative recovered from a micro load vector:
/// g at the left end (pinned to 0), at every interval midpoint, and at the
/// right end.  Determined up to this normalization only.
template <class Scalar>
struct AntiderivativeSamples {
    Scalar g0 = Scalar(0);
    VectorX<Scalar> gMid; ///< gMid[j] = g at midpoint of interval j+1, one per interval
    Scalar gEnd = Scalar(0);
};

using AntiderivativeSamplesd = AntiderivativeSamples<double>;

/// Prefix sums of the load entries: gMid[j] = rhs[0] + ... + rhs[j] and
/// gEnd = sum of all entries.  One running left-to-right accumulation, so
/// the samples are bit-reproducible across runs.
template <class Scalar>
AntiderivativeSamples<Scalar> recoverAntiderivative(const VectorX<Scalar>& rhs) {
    const Eigen::Index n = rhs.size() - 1;
    if (n < 1)
        throw LengthError("recoverAntiderivative: need at least two load entries");
    AntiderivativeSamples<Scalar> s;
    s.gMid.resize(n);
    Scalar running = Scalar(0);
    for (Eigen::Index j = 0; j < n; ++j) {
        running += rhs[j];
        s.gMid[j] = running;
    }
    s.gEnd = running + rhs[n];
    return s;
}

/// Differences the samples back into a load vector (the inverse map of
/// recoverAntiderivative up to floating-point rounding of the prefix sums).
template <class Scalar>
VectorX<Scalar> loadFromSamples(const AntiderivativeSamples<Scalar>& s) {
    const Eigen::Index n = s.gMid.size();
    VectorX<Scalar> rhs(n + 1);
    rhs[0] = s.gMid[0] - s.g0;
    for (Eigen::Index j = 1; j < n; ++j)
        rhs[j] = s.gMid[j] - s.gMid[j - 1];
    rhs[n] = s.gEnd - s.gMid[n - 1];
    return rhs;
}

} // namespace ams1d

#endif
