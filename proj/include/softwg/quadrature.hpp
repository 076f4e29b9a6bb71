#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "softwg/common.hpp"

namespace softwg {

// Gauss-Legendre nodes/weights on [-1, 1].
namespace gauss {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes by Newton iteration on Legendre polynomials; cached per order.
inline const Rule& legendre(int n) {
    static thread_local std::vector<Rule> cache;
    if (static_cast<int>(cache.size()) <= n) cache.resize(n + 1);
    Rule& r = cache[n];
    if (!r.nodes.empty()) return r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

}  // namespace gauss

/// Gauss-Legendre on a single interval.
template <class F>
double integrate_gauss(const F& f, double a, double b, int order = 16) {
    const auto& rule = gauss::legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

/// Composite Gauss over explicit panel breakpoints.
template <class F>
double integrate_panels(const F& f, const std::vector<double>& breaks, int order = 16) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        acc += integrate_gauss(f, breaks[i], breaks[i + 1], order);
    return acc;
}

/// Uniform panel breakpoints.
inline std::vector<double> uniform_breaks(double a, double b, int n) {
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = a + (b - a) * i / n;
    return v;
}

/// Log-spaced panel breakpoints (a, b > 0).
inline std::vector<double> log_breaks(double a, double b, int n) {
    std::vector<double> v(n + 1);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i <= n; ++i) v[i] = std::exp(la + (lb - la) * i / n);
    v.front() = a;
    v.back() = b;
    return v;
}

/// Tensor-product Gauss over a rectangle partitioned in both directions.
template <class F>
double integrate_tensor(const F& f, const std::vector<double>& xBreaks,
                        const std::vector<double>& yBreaks, int order = 12) {
    const auto& rule = gauss::legendre(order);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < xBreaks.size(); ++i) {
        const double xm = 0.5 * (xBreaks[i] + xBreaks[i + 1]);
        const double xh = 0.5 * (xBreaks[i + 1] - xBreaks[i]);
        for (std::size_t j = 0; j + 1 < yBreaks.size(); ++j) {
            const double ym = 0.5 * (yBreaks[j] + yBreaks[j + 1]);
            const double yh = 0.5 * (yBreaks[j + 1] - yBreaks[j]);
            double cell = 0.0;
            for (std::size_t p = 0; p < rule.nodes.size(); ++p) {
                const double x = xm + xh * rule.nodes[p];
                double row = 0.0;
                for (std::size_t q = 0; q < rule.nodes.size(); ++q)
                    row += rule.weights[q] * f(x, ym + yh * rule.nodes[q]);
                cell += rule.weights[p] * row;
            }
            acc += cell * xh * yh;
        }
    }
    return acc;
}

}  // namespace softwg
