#include "lipcurve/ellipse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace lipcurve {

namespace {

constexpr double kDegenerate = 1e-14;
constexpr int kMaxIterations = 200;

// Canonical frame: center at the origin of the frame, major axis along u.
// The query origin sits at (sx * px, py) with px, py >= 0; v is the unit
// direction of its offset from the major axis (empty in d = 1 or on-axis in
// d = 1).
struct Frame {
    Point center;
    Point u;
    Point v;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double px = 0.0;
    double py = 0.0;
    double sx = 1.0;
    bool circle = false;
    bool segment = false;

    Point map(double x, double y) const {
        Point p = center;
        if (!u.values().empty()) p += u * (sx * x);
        if (y != 0.0 && !v.values().empty()) p += v * y;
        return p;
    }
};

Point any_orthogonal(const Point& u) {
    if (u.dim() < 2) return {};
    std::size_t axis = 0;
    for (std::size_t i = 1; i < u.dim(); ++i)
        if (std::abs(u[i]) < std::abs(u[axis])) axis = i;
    Point e = Point::zero(u.dim());
    e[axis] = 1.0;
    e -= u * dot(e, u);
    return e / e.norm();
}

Frame make_frame(const FocalEllipse& e) {
    e.validate();
    Frame f;
    const Point diff = e.f2 - e.f1;
    const double focal = diff.norm();
    f.center = (e.f1 + e.f2) * 0.5;
    f.c = 0.5 * focal;
    f.a = std::max(0.5 * e.string_length, f.c);
    f.b = std::sqrt((f.a - f.c) * (f.a + f.c));

    const Point w = -f.center;
    if (!(f.c > kDegenerate * f.a) || focal == 0.0) {
        f.circle = true;
        return f;
    }
    f.segment = f.b <= kDegenerate * f.a;
    f.u = diff / focal;
    const double along = dot(w, f.u);
    const Point offset = w - f.u * along;
    f.px = std::abs(along);
    f.sx = along < 0.0 ? -1.0 : 1.0;
    f.py = offset.norm();
    f.v = f.py > 0.0 ? offset / f.py : any_orthogonal(f.u);
    return f;
}

// Root of an increasing function on [lo, hi] with f(lo) < 0 <= f(hi):
// Newton steps, falling back to bisection whenever a step leaves the bracket
// or fails to halve it.
template <class F>
double increasing_root(F&& f, double lo, double hi) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double x = 0.5 * (lo + hi);
    auto [fx, dfx] = f(x);
    double step_old = hi - lo;
    double step = step_old;
    for (int it = 0; it < kMaxIterations; ++it) {
        if (fx == 0.0) return x;
        if (fx < 0.0)
            lo = x;
        else
            hi = x;
        const bool newton = dfx > 0.0 && ((x - hi) * dfx - fx) * ((x - lo) * dfx - fx) < 0.0 &&
                            std::abs(2.0 * fx) <= std::abs(step_old * dfx);
        step_old = step;
        if (newton) {
            step = fx / dfx;
            x -= step;
        } else {
            step = 0.5 * (hi - lo);
            x = lo + step;
        }
        if (std::abs(step) <= 2.0 * eps * std::abs(x) || hi - lo <= 2.0 * eps * std::abs(hi)) break;
        std::tie(fx, dfx) = f(x);
    }
    return x;
}

ExtremalPoint circle_closest(const Frame& f) {
    const double r = f.center.norm();
    if (r <= f.a) return {0.0, Point::zero(f.center.dim())};
    return {r - f.a, f.center * (1.0 - f.a / r)};
}

ExtremalPoint circle_farthest(const Frame& f) {
    const double r = f.center.norm();
    Point dir;
    if (r > 0.0) {
        dir = f.center / r;
    } else {
        dir = Point::zero(f.center.dim());
        dir[0] = 1.0;
    }
    return {r + f.a, f.center + dir * f.a};
}

}  // namespace

void FocalEllipse::validate() const {
    if (f1.dim() == 0 || f1.dim() != f2.dim())
        throw std::invalid_argument("ellipse foci must share a dimension >= 1");
    if (!f1.finite() || !f2.finite() || !std::isfinite(string_length))
        throw std::invalid_argument("ellipse has non-finite data");
    const double focal = distance(f1, f2);
    if (string_length < focal - 1e-12 * std::max(1.0, focal))
        throw std::invalid_argument("ellipse string length is shorter than the focal distance");
}

FocalEllipse ellipse_from_samples(InstrumentedCurve& curve, double x1, double x2) {
    if (x1 > x2) throw std::invalid_argument("ellipse_from_samples needs x1 <= x2");
    return {curve.evaluate(x1), curve.evaluate(x2), x2 - x1};
}

FocalEllipse ellipse_from_samples(const Curve& curve, double x1, double x2) {
    if (x1 > x2) throw std::invalid_argument("ellipse_from_samples needs x1 <= x2");
    if (!(x1 >= 0.0 && x2 <= 1.0)) throw std::out_of_range("curve parameter outside [0,1]");
    return {curve(x1), curve(x2), x2 - x1};
}

bool contains(const FocalEllipse& e, const Point& p) {
    return distance(e.f1, p) + distance(e.f2, p) <= e.string_length + 1e-12;
}

ExtremalPoint closest_point(const FocalEllipse& e) {
    const Frame f = make_frame(e);
    const Point origin = Point::zero(e.f1.dim());
    if (e.f1.norm() + e.f2.norm() <= e.string_length) return {0.0, origin};
    if (f.circle) return circle_closest(f);

    const double a = f.a, b = f.b, c = f.c, px = f.px, py = f.py;
    if (f.segment) {
        if (px <= a) return {py, f.map(px, 0.0)};
        return {std::hypot(px - a, py), f.map(a, 0.0)};
    }
    if (py == 0.0) {
        if (px <= a) return {0.0, origin};
        return {px - a, f.map(a, 0.0)};
    }
    if (px == 0.0) {
        if (py <= b) return {0.0, origin};
        return {py - b, f.map(0.0, b)};
    }

    // Foot point (a xi, b sqrt(1 - xi^2)) with xi = a px / (t + a^2), t >= 0 the
    // Lagrange multiplier: xi^2 + (b py xi / (a px - c^2 xi))^2 = 1 on (0, px/a].
    const double c2 = c * c;
    auto secular = [&](double xi) {
        const double den = a * px - c2 * xi;
        const double r = b * py * xi / den;
        const double dr = b * py * a * px / (den * den);
        return std::pair{(xi - 1.0) * (xi + 1.0) + r * r, 2.0 * xi + 2.0 * r * dr};
    };
    const double hi = std::min(1.0, px / a);
    if (secular(hi).first <= 0.0) return {0.0, origin};
    const double xi = increasing_root(secular, 0.0, hi);
    const double fx = a * xi;
    const double fy = b * std::sqrt(std::max(0.0, (1.0 - xi) * (1.0 + xi)));
    return {std::hypot(px - fx, py - fy), f.map(fx, fy)};
}

ExtremalPoint farthest_point(const FocalEllipse& e) {
    const Frame f = make_frame(e);
    if (f.circle) return circle_farthest(f);

    const double a = f.a, b = f.b, c = f.c, px = f.px, py = f.py;
    if (f.segment) return {std::hypot(px + a, py), f.map(-a, 0.0)};

    // Far foot point (-a xi, -b sqrt(1 - xi^2)):
    // xi^2 + (b py xi / (a px + c^2 xi))^2 = 1 on (0, 1].
    const double c2 = c * c;
    double xi = 1.0;
    if (px == 0.0) {
        const double k = b * py / c2;
        xi = k >= 1.0 ? 0.0 : std::sqrt((1.0 - k) * (1.0 + k));
    } else if (py > 0.0) {
        auto secular = [&](double t) {
            const double den = a * px + c2 * t;
            const double r = b * py * t / den;
            const double dr = b * py * a * px / (den * den);
            return std::pair{(t - 1.0) * (t + 1.0) + r * r, 2.0 * t + 2.0 * r * dr};
        };
        if (secular(1.0).first > 0.0) xi = increasing_root(secular, 0.0, 1.0);
    }
    const double fx = a * xi;
    const double fy = b * std::sqrt(std::max(0.0, (1.0 - xi) * (1.0 + xi)));
    return {std::hypot(px + fx, py + fy), f.map(-fx, -fy)};
}

double closest_possible(const FocalEllipse& e) { return closest_point(e).distance; }
double farthest_possible(const FocalEllipse& e) { return farthest_point(e).distance; }

ExtremalDistances extremal_distances(const FocalEllipse& e) {
    return {closest_possible(e), farthest_possible(e)};
}

}  // namespace lipcurve
