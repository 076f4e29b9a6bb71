#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace softwg {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Input failed a structural precondition (bad profile, bad geometry, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine did not converge within its budget.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Bisection ran out of budget; carries the last bracketing interval.
class BisectionError : public SolverError {
public:
    BisectionError(const std::string& what, double lo, double hi)
        : SolverError(what), bracketLo(lo), bracketHi(hi) {}
    double bracketLo;
    double bracketHi;
};

/// Ground energy sits inside the resonance tolerance window but the scaled
/// probe is inconclusive; caller should tighten tolerances.
class CriticalWindowError : public SolverError {
public:
    CriticalWindowError(const std::string& what, double e0, double e0Scaled)
        : SolverError(what), groundEnergy(e0), scaledGroundEnergy(e0Scaled) {}
    double groundEnergy;
    double scaledGroundEnergy;
};

/// Arc-spline residual closure cannot stay inside the curvature bounds.
class RefinementRequiredError : public std::runtime_error {
public:
    RefinementRequiredError(const std::string& what, int suggested)
        : std::runtime_error(what), suggestedN(suggested) {}
    int suggestedN;
};

/// No theorem case applies to the given profile/geometry combination.
class UnsupportedCaseError : public std::runtime_error {
public:
    explicit UnsupportedCaseError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Small plane-geometry vocabulary
// ---------------------------------------------------------------------------

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double xx, double yy) : x(xx), y(yy) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {c * x, c * y}; }
    Vec2 operator/(double c) const { return {x / c, y / c}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squaredNorm() const { return x * x + y * y; }
    Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
    /// Rotation by +90 degrees (the inward-normal convention n = (-y', x')).
    Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double c, const Vec2& v) { return {c * v.x, c * v.y}; }

inline Vec2 rotate(const Vec2& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

// ---------------------------------------------------------------------------
// Polynomials in one variable, coefficients in ascending order
// ---------------------------------------------------------------------------

inline double poly_eval(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

inline std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
    if (coeffs.size() <= 1) return {0.0};
    std::vector<double> d(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * static_cast<double>(i);
    return d;
}

/// Antiderivative with zero constant term.
inline std::vector<double> poly_antiderivative(const std::vector<double>& coeffs) {
    std::vector<double> p(coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) p[i + 1] = coeffs[i] / static_cast<double>(i + 1);
    return p;
}

// ---------------------------------------------------------------------------
// Smooth compactly supported bump on (-1, 1), unit amplitude at 0
// ---------------------------------------------------------------------------

inline double bump(double u) {
    const double w = 1.0 - u * u;
    if (w <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / w);
}

inline double bump_derivative(double u) {
    const double w = 1.0 - u * u;
    if (w <= 0.0) return 0.0;
    return bump(u) * (-2.0 * u / (w * w));
}

/// Bump rescaled to the interval (lo, hi).
inline double bump_on(double x, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    return bump((x - c) / h);
}

inline double bump_on_derivative(double x, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    return bump_derivative((x - c) / h) / h;
}

}  // namespace softwg
