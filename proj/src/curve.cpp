#include "lipcurve/curve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lipcurve/errors.hpp"
#include "lipcurve/text.hpp"

namespace lipcurve {

NormalizedCurve normalize(const RawCurve& raw, const Point& query) {
    if (!(raw.lipschitz > 0.0) || !std::isfinite(raw.lipschitz))
        throw std::invalid_argument("Lipschitz bound must be positive and finite");
    if (!(raw.domain.hi > raw.domain.lo))
        throw std::invalid_argument("curve domain is empty");
    if (!raw.eval) throw std::invalid_argument("curve has no evaluator");

    const Point probe = raw.eval(raw.domain.lo);
    if (probe.dim() != query.dim())
        throw std::invalid_argument("query point has dimension " + std::to_string(query.dim()) +
                                    " but the curve lives in dimension " +
                                    std::to_string(probe.dim()));

    BackMap back{raw.domain, raw.lipschitz, query};
    const double scale = back.scale();
    auto eval = [raw, query, scale](double t) {
        const double u = t >= 1.0 ? raw.domain.hi : raw.domain.lo + t * raw.domain.width();
        return (raw.eval(u) - query) / scale;
    };
    return {Curve(std::move(eval), query.dim()), std::move(back)};
}

// ---------------------------------------------------------------------------
// Polyline

namespace {

void require_same_dim(const std::vector<Point>& vertices) {
    const std::size_t d = vertices.front().dim();
    if (d == 0) throw std::invalid_argument("polyline vertices must have dimension >= 1");
    for (const auto& v : vertices) {
        if (v.dim() != d) throw std::invalid_argument("polyline vertices disagree in dimension");
        if (!v.finite()) throw std::invalid_argument("polyline vertex is not finite");
    }
}

}  // namespace

Polyline Polyline::arc_length(std::vector<Point> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("polyline needs at least 2 vertices");
    require_same_dim(vertices);

    std::vector<Point> kept;
    kept.reserve(vertices.size());
    kept.push_back(vertices.front());
    std::vector<double> knots{0.0};
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const double len = distance(kept.back(), vertices[i]);
        if (len == 0.0) continue;
        knots.push_back(knots.back() + len);
        kept.push_back(std::move(vertices[i]));
    }
    if (kept.size() < 2) throw std::invalid_argument("polyline has zero total length");
    return Polyline(std::move(knots), std::move(kept));
}

Polyline Polyline::with_knots(std::vector<double> knots, std::vector<Point> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("polyline needs at least 2 vertices");
    if (knots.size() != vertices.size())
        throw std::invalid_argument("polyline needs one knot per vertex");
    require_same_dim(vertices);
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i])) throw std::invalid_argument("polyline knot is not finite");
        if (i == 0) continue;
        if (knots[i] < knots[i - 1]) throw std::invalid_argument("polyline knots must be non-decreasing");
        if (knots[i] == knots[i - 1] && !(vertices[i] == vertices[i - 1]))
            throw std::invalid_argument("repeated knot between distinct vertices");
    }
    if (!(knots.back() > knots.front())) throw std::invalid_argument("polyline knot domain is empty");
    return Polyline(std::move(knots), std::move(vertices));
}

Point Polyline::at(double t) const {
    const double lo = knots_.front();
    const double hi = knots_.back();
    if (!(t >= lo && t <= hi)) {
        const double slack = 1e-12 * (hi - lo);
        if (t >= lo - slack && t <= hi + slack)
            t = std::clamp(t, lo, hi);
        else
            throw std::out_of_range("polyline parameter outside its domain");
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (i + 1 >= knots_.size()) return vertices_.back();
    const double k0 = knots_[i];
    const double k1 = knots_[i + 1];
    if (t == k0) return vertices_[i];
    return lerp(vertices_[i], vertices_[i + 1], (t - k0) / (k1 - k0));
}

double Polyline::length() const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i)
        total += distance(vertices_[i], vertices_[i + 1]);
    return total;
}

double Polyline::max_speed() const {
    double speed = 0.0;
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        const double dt = knots_[i + 1] - knots_[i];
        if (dt > 0.0) speed = std::max(speed, distance(vertices_[i], vertices_[i + 1]) / dt);
    }
    return speed;
}

Polyline Polyline::rescaled_to_unit() const {
    const double lo = knots_.front();
    const double w = knots_.back() - lo;
    std::vector<double> k(knots_.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = (knots_[i] - lo) / w;
    k.front() = 0.0;
    k.back() = 1.0;
    return Polyline(std::move(k), vertices_);
}

// ---------------------------------------------------------------------------
// Specs

CurveSpec polyline_curve(std::vector<Point> vertices) {
    const Polyline checked = Polyline::arc_length(vertices);
    return PolylineSpec{checked.vertices(), {}};
}

namespace {

struct RawVisitor {
    RawCurve operator()(const PolylineSpec& s) const {
        if (s.knots.empty()) {
            auto poly = std::make_shared<const Polyline>(Polyline::arc_length(s.vertices));
            const double len = poly->knots().back();
            return {[poly, len](double u) { return poly->at(u >= 1.0 ? len : u * len); },
                    Domain{0.0, 1.0}, len};
        }
        auto poly = std::make_shared<const Polyline>(Polyline::with_knots(s.knots, s.vertices));
        const double speed = poly->max_speed();
        return {[poly](double u) { return poly->at(u); }, poly->domain(), speed > 0.0 ? speed : 1.0};
    }
    RawCurve operator()(const ConstantSpec& s) const {
        if (s.value.dim() == 0 || !s.value.finite())
            throw std::invalid_argument("constant curve needs a finite point");
        return {[p = s.value](double) { return p; }, Domain{0.0, 1.0}, 1.0};
    }
    RawCurve operator()(const SegmentSpec& s) const {
        if (s.from.dim() != s.to.dim() || s.from.dim() == 0)
            throw std::invalid_argument("segment endpoints disagree in dimension");
        const double len = distance(s.from, s.to);
        return {[a = s.from, b = s.to](double u) { return u >= 1.0 ? b : lerp(a, b, u); },
                Domain{0.0, 1.0}, len > 0.0 ? len : 1.0};
    }
    RawCurve operator()(const CircleArcSpec& s) const {
        if (s.center.dim() != 2) throw std::invalid_argument("circle arcs are planar");
        if (!(s.radius > 0.0)) throw std::invalid_argument("circle arc radius must be positive");
        if (!(s.angle_to > s.angle_from)) throw std::invalid_argument("circle arc angle range is empty");
        const double sweep = s.angle_to - s.angle_from;
        return {[s, sweep](double u) {
                    const double ang = s.angle_from + u * sweep;
                    return Point{s.center[0] + s.radius * std::cos(ang),
                                 s.center[1] + s.radius * std::sin(ang)};
                },
                Domain{0.0, 1.0}, s.radius * sweep};
    }
};

}  // namespace

RawCurve to_raw(const CurveSpec& spec) { return std::visit(RawVisitor{}, spec); }

Curve as_curve(const Polyline& polyline) {
    const Domain d = polyline.domain();
    if (d.lo != 0.0 || d.hi != 1.0)
        throw std::invalid_argument("canonical polyline must be parametrized over [0,1]");
    if (polyline.max_speed() > 1.0 + 1e-9)
        throw std::invalid_argument("canonical polyline must have speed at most 1");
    auto poly = std::make_shared<const Polyline>(polyline);
    return Curve([poly](double t) { return poly->at(t); }, polyline.dim());
}

double segment_distance(const Point& a, const Point& b, const Point& q, double* fraction) {
    const Point ab = b - a;
    const double len2 = ab.squared_norm();
    double f = 0.0;
    if (len2 > 0.0) f = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
    if (fraction) *fraction = f;
    return distance(lerp(a, b, f), q);
}

DistanceRange distance_range(const Polyline& polyline, const Point& q) {
    const auto& v = polyline.vertices();
    const auto& k = polyline.knots();
    DistanceRange r;
    r.min = distance(v.front(), q);
    r.max = r.min;
    r.argmin_parameter = r.argmax_parameter = k.front();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        double f = 0.0;
        const double dmin = segment_distance(v[i], v[i + 1], q, &f);
        if (dmin < r.min) {
            r.min = dmin;
            r.argmin_parameter = k[i] + f * (k[i + 1] - k[i]);
        }
        const double dend = distance(v[i + 1], q);
        if (dend > r.max) {
            r.max = dend;
            r.argmax_parameter = k[i + 1];
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Instrumentation

std::uint64_t InstrumentedCurve::key(double t) { return std::bit_cast<std::uint64_t>(t + 0.0); }

const Point& InstrumentedCurve::evaluate(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("curve parameter outside [0,1]");
    auto [it, inserted] = cache_.try_emplace(key(t));
    if (inserted) it->second = curve_(t);
    return it->second;
}

bool InstrumentedCurve::is_cached(double t) const { return cache_.contains(key(t)); }

LipschitzReport verify_lipschitz(const RawCurve& curve, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("verify_lipschitz needs at least one trial");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lo = curve.domain.lo;
    const double w = curve.domain.width();

    LipschitzReport report;
    for (std::size_t i = 0; i < trials; ++i) {
        const double t1 = lo + w * unit(rng);
        double t2;
        if (i % 2 == 0) {
            t2 = lo + w * unit(rng);
        } else {
            // Close pairs probe local speed; gaps stay >= 1e-4 w so rounding in
            // the evaluator does not masquerade as a violation.
            const double gap = w * std::pow(10.0, -1.0 - 3.0 * unit(rng));
            t2 = unit(rng) < 0.5 ? t1 - gap : t1 + gap;
            t2 = std::clamp(t2, lo, curve.domain.hi);
        }
        if (t1 == t2) continue;
        const double ratio =
            distance(curve.eval(t1), curve.eval(t2)) / (curve.lipschitz * std::abs(t1 - t2));
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.worst_t1 = std::min(t1, t2);
            report.worst_t2 = std::max(t1, t2);
        }
    }
    report.violated = report.max_ratio > 1.0 + 1e-9;
    return report;
}

LipschitzReport verify_lipschitz(const Curve& curve, std::size_t trials, std::uint64_t seed) {
    return verify_lipschitz(RawCurve{curve.evaluator(), Domain{0.0, 1.0}, 1.0}, trials, seed);
}

// ---------------------------------------------------------------------------
// File format

Polyline PolylineFile::polyline() const {
    if (knots.empty()) return Polyline::arc_length(vertices);
    return Polyline::with_knots(knots, vertices);
}

PolylineFile parse_polyline(std::istream& in, const std::string& source) {
    PolylineFile file;
    bool knotted = false;
    std::size_t width = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            const auto comment = text::key_value(body.substr(hash + 1));
            if (comment && comment->first == "parametrization") {
                if (!file.vertices.empty())
                    throw ParseError(source, lineno, "parametrization must precede the vertices");
                if (comment->second == "knots")
                    knotted = true;
                else if (comment->second != "arclength")
                    throw ParseError(source, lineno, "unknown parametrization '" + comment->second + "'");
            }
            body = body.substr(0, hash);
        }
        body = text::trim(body);
        if (body.empty()) continue;

        const auto fields = text::split(body, ',');
        if (width == 0) {
            width = fields.size();
            if (width < (knotted ? 2u : 1u)) throw ParseError(source, lineno, "row has no coordinates");
        } else if (fields.size() != width) {
            throw ParseError(source, lineno,
                             "expected " + std::to_string(width) + " fields, found " +
                                 std::to_string(fields.size()));
        }
        std::vector<double> values;
        values.reserve(fields.size());
        for (auto f : fields) {
            const auto v = text::parse_number(f);
            if (!v || !std::isfinite(*v))
                throw ParseError(source, lineno, "not a finite number: '" + std::string(f) + "'");
            values.push_back(*v);
        }
        if (knotted) {
            file.knots.push_back(values.front());
            values.erase(values.begin());
        }
        file.vertices.emplace_back(std::move(values));
    }
    if (file.vertices.size() < 2) throw ParseError(source, lineno, "polyline needs at least 2 vertices");
    return file;
}

PolylineFile read_polyline_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open polyline file '" + path + "'");
    return parse_polyline(in, path);
}

void write_polyline(std::ostream& out, const Polyline& polyline, bool with_knots) {
    out << "# polyline, dimension " << polyline.dim() << "\n";
    if (with_knots) out << "# parametrization = knots\n";
    for (std::size_t i = 0; i < polyline.vertices().size(); ++i) {
        bool first = true;
        if (with_knots) {
            out << text::format_number(polyline.knots()[i]);
            first = false;
        }
        for (double c : polyline.vertices()[i].coords()) {
            if (!first) out << ", ";
            out << text::format_number(c);
            first = false;
        }
        out << "\n";
    }
}

}  // namespace lipcurve
