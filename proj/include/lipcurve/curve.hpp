#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lipcurve/point.hpp"

namespace lipcurve {

using Evaluator = std::function<Point(double)>;

struct Domain {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
};

/// A user curve in its own units: any parameter interval, any Lipschitz bound,
/// query point anywhere.
struct RawCurve {
    Evaluator eval;
    Domain domain;
    double lipschitz = 1.0;
};

/// A curve in canonical form: parameter domain [0,1], Lipschitz constant at
/// most 1, query point at the origin.
class Curve {
public:
    Curve() = default;
    Curve(Evaluator eval, std::size_t dim) : eval_(std::move(eval)), dim_(dim) {}

    Point operator()(double t) const { return eval_(t); }
    std::size_t dim() const { return dim_; }
    const Evaluator& evaluator() const { return eval_; }

private:
    Evaluator eval_;
    std::size_t dim_ = 0;
};

/// Converts normalized results back into the raw curve's units.
struct BackMap {
    Domain domain;
    double lipschitz = 1.0;
    Point query;

    double scale() const { return lipschitz * domain.width(); }
    double parameter(double t) const { return domain.lo + t * domain.width(); }
    double distance(double r) const { return r * scale(); }
    Point point(const Point& p) const { return query + p * scale(); }

    double normalized_parameter(double raw_t) const { return (raw_t - domain.lo) / domain.width(); }
    double normalized_distance(double raw_r) const { return raw_r / scale(); }
};

struct NormalizedCurve {
    Curve curve;
    BackMap back_map;
};

/// C'(t) = (raw(a + t(b-a)) - q) / (L (b-a)). Throws std::invalid_argument on a
/// non-positive Lipschitz bound, an empty domain, or a dimension mismatch
/// between the curve and the query point.
NormalizedCurve normalize(const RawCurve& raw, const Point& query);

/// A piecewise-linear curve with explicit parameter knots. Arc-length
/// polylines are the special case knots = cumulative length.
class Polyline {
public:
    /// Unit-speed parametrization over [0, total length]. Zero-length edges are
    /// dropped. Throws on fewer than two vertices or zero total length.
    static Polyline arc_length(std::vector<Point> vertices);

    /// Linear interpolation between (knot_i, vertex_i). Knots must be
    /// non-decreasing with knots.front() < knots.back(); repeated knots are
    /// allowed only between equal vertices.
    static Polyline with_knots(std::vector<double> knots, std::vector<Point> vertices);

    Point at(double t) const;
    Domain domain() const { return {knots_.front(), knots_.back()}; }
    std::size_t dim() const { return vertices_.front().dim(); }
    double length() const;
    /// Largest edge speed |v_{i+1} - v_i| / (k_{i+1} - k_i).
    double max_speed() const;

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<double>& knots() const { return knots_; }

    /// Same geometry with knots affinely mapped onto [0,1].
    Polyline rescaled_to_unit() const;

private:
    Polyline(std::vector<double> knots, std::vector<Point> vertices)
        : knots_(std::move(knots)), vertices_(std::move(vertices)) {}

    std::vector<double> knots_;
    std::vector<Point> vertices_;
};

struct PolylineSpec {
    std::vector<Point> vertices;
    /// Empty: arc-length parametrization. Otherwise one knot per vertex.
    std::vector<double> knots;
};
struct ConstantSpec {
    Point value;
};
struct SegmentSpec {
    Point from;
    Point to;
};
/// Planar arc center + radius (cos a, sin a) for a in [angle_from, angle_to],
/// parametrized at constant angular speed.
struct CircleArcSpec {
    Point center;
    double radius = 1.0;
    double angle_from = 0.0;
    double angle_to = 1.0;
};

using CurveSpec = std::variant<PolylineSpec, ConstantSpec, SegmentSpec, CircleArcSpec>;

/// Arc-length polyline spec; validated eagerly.
CurveSpec polyline_curve(std::vector<Point> vertices);

/// Raw realization of a spec. Polylines without knots map [0,1] onto arc
/// length with L equal to the total length; knotted polylines keep their knot
/// domain with L = max edge speed; constants and segments live on [0,1].
RawCurve to_raw(const CurveSpec& spec);

/// Canonical curve for a spec whose realization already has domain [0,1],
/// unit Lipschitz bound and the query at the origin.
Curve as_curve(const Polyline& polyline);

/// Exact minimum and maximum of |p - q| over the polyline image.
struct DistanceRange {
    double min = 0.0;
    double max = 0.0;
    double argmin_parameter = 0.0;
    double argmax_parameter = 0.0;
};
DistanceRange distance_range(const Polyline& polyline, const Point& q);

/// Closest-point distance from q to segment [a,b].
double segment_distance(const Point& a, const Point& b, const Point& q, double* fraction = nullptr);

/// Memoizing wrapper that counts distinct evaluated parameters. Confined to a
/// single query execution.
class InstrumentedCurve {
public:
    explicit InstrumentedCurve(Curve curve) : curve_(std::move(curve)) {}

    /// Throws std::out_of_range for t outside [0,1].
    const Point& evaluate(double t);
    bool is_cached(double t) const;
    std::size_t unique_sample_count() const { return cache_.size(); }
    const Curve& curve() const { return curve_; }
    std::size_t dim() const { return curve_.dim(); }

private:
    static std::uint64_t key(double t);

    Curve curve_;
    std::unordered_map<std::uint64_t, Point> cache_;
};

struct LipschitzReport {
    double max_ratio = 0.0;
    double worst_t1 = 0.0;
    double worst_t2 = 0.0;
    bool violated = false;
};

/// Random-pair spot check of |C(t1) - C(t2)| <= L |t1 - t2|. Reports the
/// largest observed ratio divided by the declared bound and flags a violation
/// above 1 + 1e-9. Cannot prove the condition.
LipschitzReport verify_lipschitz(const RawCurve& curve, std::size_t trials, std::uint64_t seed);
LipschitzReport verify_lipschitz(const Curve& curve, std::size_t trials, std::uint64_t seed);

/// Polyline text format: one vertex per line, comma-separated coordinates,
/// '#' comments. The comment line "# parametrization = knots" switches to rows
/// of "t, x1, ..., xd".
struct PolylineFile {
    std::vector<Point> vertices;
    std::vector<double> knots;

    Polyline polyline() const;
};
PolylineFile parse_polyline(std::istream& in, const std::string& source = "<input>");
PolylineFile read_polyline_file(const std::string& path);
void write_polyline(std::ostream& out, const Polyline& polyline, bool with_knots);

}  // namespace lipcurve
