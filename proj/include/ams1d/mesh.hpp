#ifndef AMS1D_MESH_HPP
#define AMS1D_MESH_HPP

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "ams1d/errors.hpp"
#include "ams1d/tridiagonal.hpp"

namespace ams1d {

/// Partition of [0,1] into micro intervals: strictly increasing node
/// coordinates with nodes[0] = 0 and nodes[last] = 1.
template <class Scalar>
struct MicroMesh {
    using Vector = VectorX<Scalar>;

    Vector nodes;

    Eigen::Index intervals() const { return nodes.size() - 1; }

    /// Interval widths h_j = nodes[j+1] - nodes[j].
    Vector spacings() const {
        const Eigen::Index n = intervals();
        return nodes.tail(n) - nodes.head(n);
    }

    /// Interval midpoints.
    Vector midpoints() const {
        const Eigen::Index n = intervals();
        return (nodes.tail(n) + nodes.head(n)) / Scalar(2);
    }
};

using MicroMeshd = MicroMesh<double>;

template <class Scalar>
MicroMesh<Scalar> uniformMicroMesh(Eigen::Index intervals) {
    if (intervals < 1)
        throw InvalidCount("uniformMicroMesh: need at least one interval");
    VectorX<Scalar> nodes(intervals + 1);
    for (Eigen::Index j = 0; j <= intervals; ++j)
        nodes[j] = Scalar(j) / Scalar(intervals);
    return {nodes};
}

/// Random mesh built from cumulative increments 2*u/N with u drawn uniform
/// on (0,1), rescaled so the last node lands exactly on 1.  Increments are
/// strictly positive by the generator contract, so the nodes are strictly
/// increasing.  Rng needs `double next()`.
template <class Scalar, class Rng>
MicroMesh<Scalar> randomMicroMesh(Eigen::Index intervals, Rng& rng) {
    if (intervals < 1)
        throw InvalidCount("randomMicroMesh: need at least one interval");
    VectorX<Scalar> y(intervals + 1);
    y[0] = Scalar(0);
    for (Eigen::Index j = 0; j < intervals; ++j)
        y[j + 1] = y[j] + Scalar(2) * Scalar(rng.next()) / Scalar(intervals);
    VectorX<Scalar> nodes = y / y[intervals];
    return {nodes};
}

/// Nested two-level index structure: macroNodes[K] is the micro node index
/// of the K-th macro node, with macroNodes[0] = 0 and macroNodes[last] = the
/// final micro node.  Every macro interval contains at least one micro
/// interval.
struct CoarseningMap {
    Eigen::VectorXi macroNodes;

    Eigen::Index intervals() const { return macroNodes.size() - 1; }
    int microNode(Eigen::Index k) const { return macroNodes[k]; }
    /// Number of micro intervals inside macro interval k (0-based).
    int intervalSize(Eigen::Index k) const { return macroNodes[k + 1] - macroNodes[k]; }
    int microIntervals() const { return macroNodes[macroNodes.size() - 1]; }

    bool valid(Eigen::Index microIntervalCount) const {
        if (macroNodes.size() < 2 || macroNodes[0] != 0)
            return false;
        if (macroNodes[macroNodes.size() - 1] != microIntervalCount)
            return false;
        for (Eigen::Index k = 0; k + 1 < macroNodes.size(); ++k)
            if (macroNodes[k + 1] <= macroNodes[k])
                return false;
        return true;
    }
};

/// Selects macro nodes as a subset of micro nodes: each target coordinate
/// K/N_H is mapped to the nearest micro node (lower index on a tie), then
/// indices are nudged forward where needed to keep them distinct.
template <class Scalar>
CoarseningMap buildCoarsening(const MicroMesh<Scalar>& mesh, Eigen::Index macroIntervals) {
    const Eigen::Index nh = mesh.intervals();
    if (macroIntervals < 1)
        throw InvalidCount("buildCoarsening: need at least one macro interval");
    if (macroIntervals > nh)
        throw TooCoarse("buildCoarsening: more macro intervals (" +
                        std::to_string(macroIntervals) + ") than micro intervals (" +
                        std::to_string(nh) + ")");

    Eigen::VectorXi idx(macroIntervals + 1);
    idx[0] = 0;
    Eigen::Index cursor = 0;
    for (Eigen::Index k = 1; k < macroIntervals; ++k) {
        const Scalar target = Scalar(k) / Scalar(macroIntervals);
        while (cursor + 1 < nh && mesh.nodes[cursor + 1] <= target)
            ++cursor;
        // nearest of cursor / cursor+1, lower index on a tie
        Eigen::Index nearest = cursor;
        if (cursor + 1 <= nh &&
            std::abs(mesh.nodes[cursor + 1] - target) < std::abs(mesh.nodes[cursor] - target))
            nearest = cursor + 1;
        // keep strictly increasing and leave room for the remaining nodes
        const Eigen::Index low = idx[k - 1] + 1;
        const Eigen::Index high = nh - (macroIntervals - k);
        idx[k] = static_cast<int>(std::min(std::max(nearest, low), high));
    }
    idx[macroIntervals] = static_cast<int>(nh);
    return {idx};
}

} // namespace ams1d

#endif
