#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace lipcurve {

/// A point (or displacement) in R^d with d fixed at construction.
class Point {
public:
    Point() = default;
    Point(std::initializer_list<double> coords) : coords_(coords) {}
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

    static Point zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }
    std::span<const double> coords() const { return coords_; }
    const std::vector<double>& values() const { return coords_; }

    double squared_norm() const {
        double s = 0.0;
        for (double c : coords_) s += c * c;
        return s;
    }
    double norm() const { return std::sqrt(squared_norm()); }

    bool finite() const {
        for (double c : coords_)
            if (!std::isfinite(c)) return false;
        return true;
    }

    Point& operator+=(const Point& o) {
        check_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    Point& operator-=(const Point& o) {
        check_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    Point& operator*=(double s) {
        for (double& c : coords_) c *= s;
        return *this;
    }
    Point& operator/=(double s) {
        for (double& c : coords_) c /= s;
        return *this;
    }

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator-(Point a) { return a *= -1.0; }
    friend Point operator*(Point a, double s) { return a *= s; }
    friend Point operator*(double s, Point a) { return a *= s; }
    friend Point operator/(Point a, double s) { return a /= s; }
    friend bool operator==(const Point&, const Point&) = default;

private:
    void check_dim(const Point& o) const {
        if (o.dim() != dim()) throw std::invalid_argument("point dimension mismatch");
    }

    std::vector<double> coords_;
};

inline double dot(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("point dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

/// a + t (b - a)
inline Point lerp(const Point& a, const Point& b, double t) {
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}

}  // namespace lipcurve
