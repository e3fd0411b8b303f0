#pragma once

#include "lipcurve/curve.hpp"
#include "lipcurve/point.hpp"

namespace lipcurve {

/// The filled region {p : |f1 - p| + |f2 - p| <= string_length}. Between two
/// samples x1 < x2 of a 1-Lipschitz curve, the arc C([x1,x2]) lies inside the
/// ellipse with foci C(x1), C(x2) and string length x2 - x1.
struct FocalEllipse {
    Point f1;
    Point f2;
    double string_length = 0.0;

    /// Throws std::invalid_argument when foci disagree in dimension or the
    /// string is shorter than the focal distance (beyond rounding slack).
    void validate() const;
};

FocalEllipse ellipse_from_samples(InstrumentedCurve& curve, double x1, double x2);
FocalEllipse ellipse_from_samples(const Curve& curve, double x1, double x2);

bool contains(const FocalEllipse& e, const Point& p);

/// Extremal distance from the origin to the region together with a point of
/// the region attaining it.
struct ExtremalPoint {
    double distance = 0.0;
    Point point;
};

ExtremalPoint closest_point(const FocalEllipse& e);
ExtremalPoint farthest_point(const FocalEllipse& e);

double closest_possible(const FocalEllipse& e);
double farthest_possible(const FocalEllipse& e);

struct ExtremalDistances {
    double min_dist = 0.0;
    double max_dist = 0.0;
};
ExtremalDistances extremal_distances(const FocalEllipse& e);

}  // namespace lipcurve
