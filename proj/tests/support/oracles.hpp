#pragma once

// Test-side reference computations. Nothing here calls into the library's
// geometry code; only the Point type is shared.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "lipcurve/point.hpp"

namespace oracle {

using lipcurve::Point;

inline double norm2(double x, double y) { return std::hypot(x, y); }

/// Dense focal-angle sweep of the boundary of {p : |f1-p| + |f2-p| <= s} in
/// the plane. From focus f the ray in direction u meets the boundary at
/// r = (s^2 - |w|^2) / (2 (s - u.w)), w = other - f. Angles are spaced as
/// pi * v^5 around the direction of w so needle ellipses are resolved, and
/// both foci are swept. The best sample is refined by golden section.
struct Extrema {
    double min = 0.0;
    double max = 0.0;
};

namespace detail {

// Boundary point on the ray from f at angle alpha off the direction of w,
// written with s - |w| and sin^2(alpha/2) so needle ellipses do not cancel.
inline double ray_norm(double fx, double fy, double wlen, double s, double base, double v) {
    const double alpha = M_PI * v * v * v * v * v;
    const double th = base + alpha;
    const double gap = s - wlen;
    const double sh = std::sin(alpha / 2.0);
    const double den = 2.0 * (gap + 2.0 * wlen * sh * sh);
    const double r = den > 0.0 ? std::max(0.0, gap * (s + wlen) / den) : 0.0;
    return norm2(fx + r * std::cos(th), fy + r * std::sin(th));
}

template <class F>
double golden(F f, double lo, double hi, bool maximize) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && b - a > 1e-17; ++it) {
        const bool left = maximize ? f1 > f2 : f1 < f2;
        if (left) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    return maximize ? std::max({f1, f2, f(lo), f(hi)}) : std::min({f1, f2, f(lo), f(hi)});
}

inline double sweep(double fx, double fy, double ox, double oy, double s, bool maximize, int n) {
    const double wx = ox - fx, wy = oy - fy;
    const double base = (wx == 0.0 && wy == 0.0) ? 0.0 : std::atan2(wy, wx);
    const double wlen = norm2(wx, wy);
    auto f = [&](double v) { return ray_norm(fx, fy, wlen, s, base, v); };
    double best = maximize ? -1.0 : std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int i = 0; i <= n; ++i) {
        const double v = -1.0 + 2.0 * i / n;
        const double val = f(v);
        if (maximize ? val > best : val < best) {
            best = val;
            arg = i;
        }
    }
    const double lo = -1.0 + 2.0 * std::max(arg - 1, 0) / n;
    const double hi = -1.0 + 2.0 * std::min(arg + 1, n) / n;
    const double refined = golden(f, lo, hi, maximize);
    return maximize ? std::max(best, refined) : std::min(best, refined);
}

/// Distance from the origin to segment [a,b] in the plane.
inline double origin_segment(double ax, double ay, double bx, double by) {
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? -(ax * dx + ay * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm2(ax + t * dx, ay + t * dy);
}

}  // namespace detail

inline Extrema ellipse_extrema_2d(double f1x, double f1y, double f2x, double f2y, double s, int n = 4000) {
    Extrema e;
    const bool inside = norm2(f1x, f1y) + norm2(f2x, f2y) <= s;
    e.max = std::max(detail::sweep(f1x, f1y, f2x, f2y, s, true, n), detail::sweep(f2x, f2y, f1x, f1y, s, true, n));
    e.max = std::max({e.max, norm2(f1x, f1y), norm2(f2x, f2y)});
    if (inside) {
        e.min = 0.0;
    } else {
        e.min = std::min(detail::sweep(f1x, f1y, f2x, f2y, s, false, n), detail::sweep(f2x, f2y, f1x, f1y, s, false, n));
        // The focal segment lies in the region; it resolves needle midsections.
        e.min = std::min(e.min, detail::origin_segment(f1x, f1y, f2x, f2y));
    }
    return e;
}

/// Distance from q to segment [a,b] by dense scan plus golden refinement.
inline double point_segment(const Point& a, const Point& b, const Point& q) {
    auto f = [&](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            const double c = a[i] + t * (b[i] - a[i]) - q[i];
            s += c * c;
        }
        return std::sqrt(s);
    };
    // Convex in t: golden section on [0,1] finds the minimum.
    return detail::golden(f, 0.0, 1.0, false);
}

inline double point_segment_max(const Point& a, const Point& b, const Point& q) {
    return std::max((a - q).norm(), (b - q).norm());
}

struct RangeOracle {
    double min = std::numeric_limits<double>::infinity();
    double max = 0.0;
};

inline RangeOracle vertex_range(const std::vector<Point>& vertices) {
    RangeOracle r;
    const Point o = Point::zero(vertices.front().dim());
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        r.min = std::min(r.min, point_segment(vertices[i], vertices[i + 1], o));
        r.max = std::max(r.max, point_segment_max(vertices[i], vertices[i + 1], o));
    }
    return r;
}

/// Sum of chord lengths over a uniform parameter grid.
inline double arc_length(const std::function<Point(double)>& c, double lo, double hi, int steps = 200000) {
    double total = 0.0;
    Point prev = c(lo);
    for (int i = 1; i <= steps; ++i) {
        const Point cur = c(lo + (hi - lo) * i / steps);
        total += (cur - prev).norm();
        prev = cur;
    }
    return total;
}

/// Brute-force extrema of |p| over {p in R : |f1-p| + |f2-p| <= s} on a grid.
inline Extrema interval_extrema_1d(double f1, double f2, double s, int steps = 200000) {
    const double lo = std::min(f1, f2) - s, hi = std::max(f1, f2) + s;
    Extrema e{std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i <= steps; ++i) {
        const double p = lo + (hi - lo) * i / steps;
        if (std::abs(f1 - p) + std::abs(f2 - p) <= s + 1e-15) {
            e.min = std::min(e.min, std::abs(p));
            e.max = std::max(e.max, std::abs(p));
        }
    }
    return e;
}

/// Random 3x3 rotation (Gram-Schmidt on Gaussian columns).
struct Rotation {
    double m[3][3];

    Point apply(const Point& p) const {
        Point r = Point::zero(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i] += m[i][j] * p[j];
        return r;
    }
};

inline Rotation random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    double v[3][3];
    for (auto& col : v)
        for (double& x : col) x = g(rng);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < i; ++j) {
            double d = 0.0;
            for (int k = 0; k < 3; ++k) d += v[i][k] * v[j][k];
            for (int k = 0; k < 3; ++k) v[i][k] -= d * v[j][k];
        }
        double n = 0.0;
        for (int k = 0; k < 3; ++k) n += v[i][k] * v[i][k];
        n = std::sqrt(n);
        for (int k = 0; k < 3; ++k) v[i][k] /= n;
    }
    Rotation r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = v[j][i];
    return r;
}

}  // namespace oracle
