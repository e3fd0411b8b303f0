#pragma once

// Seeded generators of Lipschitz-consistent sample configurations for the
// lemma property suites. Each generator picks the lemma's free constants so
// the hypotheses hold for most draws; the checkers still decide vacuity.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "lipcurve/lipcurve.hpp"

namespace configs {

using namespace lipcurve;

inline Point random_direction(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> g;
    Point p = Point::zero(dim);
    double n = 0.0;
    while (n < 1e-12) {
        for (std::size_t i = 0; i < dim; ++i) p[i] = g(rng);
        n = p.norm();
    }
    return p / n;
}

/// Parameters 0 <= x1 <= ... <= xn <= 1 and a walk whose steps use a random
/// fraction of the allowed length (biased toward full speed).
template <std::size_t N>
void random_walk(std::mt19937_64& rng, std::size_t dim, double spread, std::array<double, N>& params,
                 std::array<Point, N>& points) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& x : params) x = u(rng);
    std::sort(params.begin(), params.end());
    points[0] = random_direction(rng, dim) * (spread * (0.2 + u(rng)));
    for (std::size_t i = 1; i < N; ++i) {
        const double speed = 1.0 - std::pow(u(rng), 3.0);
        points[i] = points[i - 1] + random_direction(rng, dim) * ((params[i] - params[i - 1]) * speed * (1.0 - 1e-12));
    }
}

inline double cp(const Point& a, const Point& b, double s) { return closest_possible({a, b, s}); }
inline double fp(const Point& a, const Point& b, double s) { return farthest_possible({a, b, s}); }

struct LemmaDraw {
    FourSamples s;
    double d = 0.0;
    double a = 0.0;
};

struct SplitDraw {
    SplitSamples s;
    double d = 0.0;
    double eps = 0.0;
};

inline std::size_t draw_dim(std::mt19937_64& rng) { return 1 + rng() % 3; }

inline LemmaDraw ellipse_lemma_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LemmaDraw r;
    random_walk(rng, draw_dim(rng), 1.0, r.s.params, r.s.points);
    const auto& p = r.s.points;
    const auto& x = r.s.params;
    const double bound = std::max(cp(p[0], p[1], x[1] - x[0]), cp(p[2], p[3], x[3] - x[2]));
    r.d = bound + 0.05 * u(rng) * bound;
    const double room = std::min(p[1].norm() - r.d, r.d);
    r.a = room > 0.0 ? room * u(rng) : 0.01;
    return r;
}

inline SplitDraw corollary1_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SplitDraw r;
    random_walk(rng, draw_dim(rng), 1.0, r.s.params, r.s.points);
    const auto& p = r.s.points;
    const auto& x = r.s.params;
    r.d = p[1].norm() * (1.0 - 0.1 * u(rng));
    const double need = r.d - cp(p[0], p[2], x[2] - x[0]);
    r.eps = std::max(need, 0.0) + 0.1 * u(rng) * r.d;
    if (r.eps >= r.d) r.eps = r.d * (0.5 + 0.5 * u(rng));
    return r;
}

inline LemmaDraw corollary2_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LemmaDraw r;
    random_walk(rng, draw_dim(rng), 1.0, r.s.params, r.s.points);
    const auto& p = r.s.points;
    const auto& x = r.s.params;
    const double bound = std::max(cp(p[0], p[1], x[1] - x[0]), cp(p[2], p[3], x[3] - x[2]));
    r.d = bound * (1.0 + 0.05 * u(rng));
    const double room = std::min(p[1].norm() - r.d, r.d);
    r.a = 2.0 * (room > 0.0 ? room * u(rng) : 0.01);  // a holds eps
    return r;
}

inline SplitDraw corollary3_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SplitDraw r;
    random_walk(rng, draw_dim(rng), 1.0, r.s.params, r.s.points);
    const auto& p = r.s.points;
    const auto& x = r.s.params;
    const double half = 0.25 * p[1].norm() * u(rng);
    r.eps = 2.0 * half;
    r.d = std::min(cp(p[0], p[2], x[2] - x[0]) + half, p[1].norm() - half) * (1.0 - 1e-6 * u(rng));
    return r;
}

inline LemmaDraw inverted_draw(std::mt19937_64& rng, double spread = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LemmaDraw r;
    random_walk(rng, draw_dim(rng), spread, r.s.params, r.s.points);
    const auto& p = r.s.points;
    const auto& x = r.s.params;
    r.d = std::min(fp(p[0], p[1], x[1] - x[0]), fp(p[2], p[3], x[3] - x[2])) * (1.0 - 1e-6 * u(rng));
    double far = 0.0;
    for (const auto& q : p) far = std::max(far, q.norm());
    const double room = r.d - far;
    r.a = room > 0.0 ? room * (0.5 + 0.5 * u(rng)) : 0.01;
    return r;
}

/// Mirror-symmetric planar configuration: P4, P3 are reflections of P1, P2
/// across the y-axis, parameters symmetric about 1/2.
inline LemmaDraw symmetric_inverted_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LemmaDraw r;
    const double g1 = 0.05 + 0.2 * u(rng), g2 = 0.05 + 0.2 * u(rng);
    const double x1 = 0.5 - g1 - g2, x2 = 0.5 - g2;
    r.s.params = {x1, x2, 1.0 - x2, 1.0 - x1};
    const Point p2{-0.9 * g2 * u(rng), 0.3 + 0.2 * u(rng)};
    const Point p1 = p2 + random_direction(rng, 2) * (g1 * 0.9);
    r.s.points = {p1, p2, Point{-p2[0], p2[1]}, Point{-p1[0], p1[1]}};
    const auto& x = r.s.params;
    const auto& p = r.s.points;
    r.d = std::min(fp(p[0], p[1], x[1] - x[0]), fp(p[2], p[3], x[3] - x[2])) * (1.0 - 1e-6);
    double far = 0.0;
    for (const auto& q : p) far = std::max(far, q.norm());
    r.a = std::max(r.d - far, 0.0) * 0.9;
    return r;
}

/// Planar wedge: P2 = P3 on a circle of radius rho, P1 and P4 on the same
/// circle at angle beta to either side, outer gaps g. The two small ellipses
/// reach d in different directions while the long one stays short of d + a.
inline LemmaDraw wedge_inverted_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LemmaDraw r;
    const double rho = 0.05 + 0.05 * u(rng);
    const double beta = (0.6 + 0.6 * u(rng)) * (1.0 + 0.2 * (u(rng) - 0.5));
    const double g = rho * (3.5 + 1.3 * u(rng));
    const Point p2{0.0, rho};
    const Point p3 = p2 + random_direction(rng, 2) * (1e-4 * rho * u(rng));
    const double mid = (p3 - p2).norm() * (1.0 + 1e-9);
    r.s.params = {0.5 - mid / 2.0 - g, 0.5 - mid / 2.0, 0.5 + mid / 2.0, 0.5 + mid / 2.0 + g};
    const double b1 = beta * (0.8 + 0.4 * u(rng)), b4 = beta * (0.8 + 0.4 * u(rng));
    r.s.points = {Point{-rho * std::sin(b1), rho * std::cos(b1)}, p2, p3, Point{rho * std::sin(b4), rho * std::cos(b4)}};
    const auto& x = r.s.params;
    const auto& p = r.s.points;
    r.d = std::min(fp(p[0], p[1], x[1] - x[0]), fp(p[2], p[3], x[3] - x[2])) * (1.0 - 1e-9);
    double far = 0.0;
    for (const auto& q : p) far = std::max(far, q.norm());
    r.a = (r.d - far) * (1.0 - 1e-9);
    return r;
}

}  // namespace configs
