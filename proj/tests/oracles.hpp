#pragma once

// Independent reference computations used only by the test suites. These stay
// deliberately separate from the library's own solution paths: the 1D oracle
// diagonalizes a finite-difference matrix instead of shooting, the geometry
// oracle scans a dense parameter grid instead of using closed forms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "softwg/curvegeom.hpp"
#include "softwg/profile1d.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// 1D: ground eigenvalue of h = -d^2/dt^2 + v + V0*chi via Sturm bisection on
// the standard second-order finite-difference tridiagonal matrix.
// ---------------------------------------------------------------------------

struct Tridiag {
    std::vector<double> diag;
    double off = 0.0;  // constant off-diagonal
};

inline Tridiag fd_matrix(const softwg::ProfilePotential& pr, double T, double h) {
    const int n = static_cast<int>(std::llround(2.0 * T / h)) - 1;
    Tridiag m;
    m.off = -1.0 / (h * h);
    m.diag.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = -T + (i + 1) * h;
        // average one-sided limits so jumps at grid nodes keep O(h^2) accuracy
        const double vv = 0.5 * (pr.operator_potential(t - 1e-12) +
                                 pr.operator_potential(t + 1e-12));
        m.diag[i] = 2.0 / (h * h) + vv;
    }
    return m;
}

/// Number of eigenvalues of the tridiagonal matrix below x (Sturm/LDL count).
inline int sturm_count(const Tridiag& m, double x) {
    int count = 0;
    double d = 1.0;
    const double b2 = m.off * m.off;
    for (std::size_t i = 0; i < m.diag.size(); ++i) {
        d = m.diag[i] - x - (i ? b2 / d : 0.0);
        if (d == 0.0) d = 1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

inline std::optional<double> smallest_eig(const Tridiag& m) {
    double lo = *std::min_element(m.diag.begin(), m.diag.end()) + 2.0 * m.off - 1.0;
    double hi = 0.0;
    if (sturm_count(m, hi) == 0) return std::nullopt;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(m, mid) >= 1)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < std::max(1e-14, 1e-13 * std::abs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

/// Dense-grid diagonalization oracle, Richardson-extrapolated over h and h/2.
/// The domain adapts to the decay rate so truncation stays below tolerance.
inline std::optional<double> ground_energy(const softwg::ProfilePotential& pr,
                                           double h = 1e-3) {
    auto solveAt = [&](double T, double step) { return smallest_eig(fd_matrix(pr, T, step)); };
    // first pass on a generous fixed box to estimate the decay rate
    auto first = solveAt(30.0, 4.0 * h);
    if (!first || *first >= -1e-12) return std::nullopt;
    const double xi = std::sqrt(-*first);
    double T = pr.a + 14.0 / xi;
    T = std::min(std::max(T, 10.0), 400.0);
    // snap T to the grid so potential breakpoints on 0.05 lattices hit nodes
    T = std::ceil(T / (100.0 * h)) * (100.0 * h);
    const auto e1 = solveAt(T, h);
    const auto e2 = solveAt(T, 0.5 * h);
    if (!e1 || !e2) return std::nullopt;
    return (4.0 * (*e2) - (*e1)) / 3.0;
}

// ---------------------------------------------------------------------------
// Geometry: brute-force extrema of the distance function d_x(s) on a dense
// s-grid with local golden-section refinement.
// ---------------------------------------------------------------------------

struct DistExtremum {
    double s = 0.0;
    double value = 0.0;
    bool isMin = true;
};

inline std::vector<DistExtremum> distance_extrema(const softwg::PlanarCurve& curve,
                                                  softwg::Vec2 x, double sPad = 0.0,
                                                  int nGrid = 200000) {
    const double s0 = curve.domain_start() - (sPad > 0 ? sPad : 20.0 + curve.length());
    const double s1 = curve.domain_end() + (sPad > 0 ? sPad : 20.0 + curve.length());
    auto d = [&](double s) { return (curve.point(s) - x).norm(); };
    std::vector<DistExtremum> out;
    const double h = (s1 - s0) / nGrid;
    double dm = d(s0), dc = d(s0 + h);
    for (int i = 1; i + 1 < nGrid; ++i) {
        const double sc = s0 + (i + 1) * h;
        const double dp = d(sc);
        const bool isMin = dc < dm && dc < dp;
        const bool isMax = dc > dm && dc > dp;
        if (isMin || isMax) {
            // golden-section polish inside the bracketing cells
            double lo = sc - 2.0 * h, hi = sc;
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double b = hi - gr * (hi - lo), c = lo + gr * (hi - lo);
            auto g = [&](double s) { return isMin ? d(s) : -d(s); };
            double fb = g(b), fc = g(c);
            for (int it = 0; it < 90; ++it) {
                if (fb < fc) {
                    hi = c;
                    c = b;
                    fc = fb;
                    b = hi - gr * (hi - lo);
                    fb = g(b);
                } else {
                    lo = b;
                    b = c;
                    fb = fc;
                    c = lo + gr * (hi - lo);
                    fc = g(c);
                }
            }
            const double sStar = 0.5 * (lo + hi);
            out.push_back({sStar, d(sStar), isMin});
        }
        dm = dc;
        dc = dp;
    }
    return out;
}

}  // namespace oracles
