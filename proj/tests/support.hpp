#ifndef AMS1D_TESTS_SUPPORT_HPP
#define AMS1D_TESTS_SUPPORT_HPP

#include <cmath>
#include <vector>

#include "ams1d/ams1d.hpp"

namespace ams1d::testing {

// Quad-precision scalar for the Galerkin triple-product oracle.  The coarse
// matrix of a heavy-tailed random system can sit six orders of magnitude
// below the fine entries, so a double (or 80-bit) evaluation of P^T A P
// loses the 1e-12 comparison to its own cancellation; 113 mantissa bits
// leave the comparison limited by the code under test only.
#if defined(__SIZEOF_FLOAT128__)
using quad = __float128;
#else
using quad = long double;
#endif

struct CoarseOracle {
    VectorXd diag;
    VectorXd lower;
    VectorXd rhs;
};

/// Galerkin coarse system P^T A P, P^T b evaluated in quad precision: the
/// discrete-harmonic basis is recomputed from exact casts of the fine
/// entries, prolongation columns are assembled densely, and the products are
/// taken with the tridiagonal operator applied column by column.
inline CoarseOracle galerkinCoarseOracle(const TridiagonalSystemd& fine,
                                         const CoarseningMap& map) {
    const Eigen::Index n = fine.lower.size();
    const Eigen::Index m = map.intervals();

    std::vector<quad> dq(n + 1), lq(n), bq(n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
        dq[i] = static_cast<quad>(fine.diag[i]);
        bq[i] = static_cast<quad>(fine.rhs[i]);
    }
    for (Eigen::Index i = 0; i < n; ++i)
        lq[i] = static_cast<quad>(fine.lower[i]);

    // dense prolongation, column per macro node
    std::vector<std::vector<quad>> p(m + 1, std::vector<quad>(n + 1, quad(0)));
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::Index begin = map.microNode(k);
        const Eigen::Index len = map.intervalSize(k);
        quad running = quad(0);
        std::vector<quad> prefix(len + 1);
        prefix[0] = running;
        for (Eigen::Index j = 0; j < len; ++j) {
            running += quad(1) / lq[begin + j];
            prefix[j + 1] = running;
        }
        const quad total = prefix[len];
        for (Eigen::Index l = 0; l <= len; ++l) {
            const quad plus = prefix[l] / total;
            p[k][begin + l] = quad(1) - plus;
            p[k + 1][begin + l] = plus;
        }
    }

    // ap[k] = A * column k
    std::vector<std::vector<quad>> ap(m + 1, std::vector<quad>(n + 1, quad(0)));
    for (Eigen::Index k = 0; k <= m; ++k)
        for (Eigen::Index i = 0; i <= n; ++i) {
            quad v = dq[i] * p[k][i];
            if (i > 0)
                v += lq[i - 1] * p[k][i - 1];
            if (i < n)
                v += lq[i] * p[k][i + 1];
            ap[k][i] = v;
        }

    const auto dot = [n](const std::vector<quad>& a, const std::vector<quad>& b) {
        quad s = quad(0);
        for (Eigen::Index i = 0; i <= n; ++i)
            s += a[i] * b[i];
        return s;
    };

    CoarseOracle out;
    out.diag.resize(m + 1);
    out.lower.resize(m);
    out.rhs.resize(m + 1);
    for (Eigen::Index k = 0; k <= m; ++k) {
        out.diag[k] = static_cast<double>(dot(p[k], ap[k]));
        out.rhs[k] = static_cast<double>(dot(p[k], bq));
        if (k < m)
            out.lower[k] = static_cast<double>(dot(p[k + 1], ap[k]));
    }
    return out;
}

/// Random micro system with log-uniform off-diagonal magnitudes and uniform
/// load entries; row-sum diagonal like every assembled system.
inline MicroSystemd randomMicroSystem(SeededRng& rng, Eigen::Index intervals, double lo = 0.1,
                                      double hi = 10.0) {
    VectorXd lower(intervals);
    for (Eigen::Index j = 0; j < intervals; ++j)
        lower[j] = -lo * std::exp(std::log(hi / lo) * rng.next());
    VectorXd diag(intervals + 1);
    diag[0] = -lower[0];
    for (Eigen::Index i = 1; i < intervals; ++i)
        diag[i] = -lower[i - 1] - lower[i];
    diag[intervals] = -lower[intervals - 1];
    VectorXd rhs(intervals + 1);
    for (Eigen::Index i = 0; i <= intervals; ++i)
        rhs[i] = 2.0 * rng.next() - 1.0;
    return {{diag, lower, rhs}, uniformMicroMesh<double>(intervals), VectorXd()};
}

inline double relInf(const VectorXd& a, const VectorXd& b) {
    const double scale = b.cwiseAbs().maxCoeff();
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

/// Catalog of the paper-style problems used by cross-cutting tests.
inline std::vector<ProblemSpecd> problemCatalog(std::uint64_t seed) {
    std::vector<ProblemSpecd> specs;
    specs.push_back(example1<double>());
    for (int v = 2; v <= 5; ++v)
        specs.push_back(exampleRandom<double>(v, seed));
    return specs;
}

} // namespace ams1d::testing

#endif
