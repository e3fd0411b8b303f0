#include "lipcurve/instances.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lipcurve/errors.hpp"
#include "lipcurve/proofset.hpp"
#include "lipcurve/text.hpp"

namespace lipcurve {

namespace {

using text::format_number;

// Portable draws: the standard distributions are not specified bit-for-bit
// across library implementations, mt19937_64 itself is.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

Point random_direction(std::mt19937_64& rng, std::size_t dim) {
    while (true) {
        Point p = Point::zero(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const double u1 = 1.0 - uniform01(rng);
            const double u2 = uniform01(rng);
            p[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        }
        const double n = p.norm();
        if (n > 1e-12) return p / n;
    }
}

Point on_circle(double angle, double radius = 1.0) { return {radius * std::cos(angle), radius * std::sin(angle)}; }

Polyline unit_polyline(std::vector<Point> vertices) { return Polyline::arc_length(std::move(vertices)).rescaled_to_unit(); }

void fill_extremes(InstanceMetadata& meta, const Polyline& curve) {
    const DistanceRange r = distance_range(curve, Point::zero(curve.dim()));
    meta.d_min = r.min;
    meta.d_max = r.max;
}

}  // namespace

InstanceBundle constant_instance(const Point& p, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(p.norm() > eps)) throw std::invalid_argument("constant instance needs |p| > epsilon");
    InstanceMetadata meta;
    meta.family = "constant";
    meta.epsilon = eps;
    meta.d_min = meta.d_max = p.norm();
    meta.opt_upper_bound = static_cast<std::size_t>(std::ceil((1.0 / (2.0 * eps)) * (1.0 - 1e-12))) + 1;
    return {Polyline::with_knots({0.0, 1.0}, {p, p}), eps, meta};
}

InstanceBundle spike_family(std::size_t k, double eps, std::size_t down_index, std::uint64_t seed) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("spike family needs 0 < epsilon < 1/2");
    if (k < 1) throw std::invalid_argument("spike family needs k >= 1");
    const auto n = static_cast<std::size_t>(std::llround(1.0 / (3.0 * eps)));
    if (k > n)
        throw std::invalid_argument("spike family needs k <= n = round(1/(3 eps)) = " + std::to_string(n));
    if (down_index < 1 || down_index > k) throw std::invalid_argument("down_index must lie in [1, k]");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> spike_region(k);
    for (std::size_t g = 0; g < k; ++g) {
        const std::size_t lo = g * n / k;
        const std::size_t hi = (g + 1) * n / k;
        spike_region[g] = lo + uniform_index(rng, hi - lo);
    }

    const double nn = static_cast<double>(n);
    const double h = 1.0 / (2.0 * nn);
    const double chord_angle = 2.0 * std::asin(1.0 / (2.0 * nn));
    const double flats = static_cast<double>(n - k);
    double angle = std::numbers::pi / 2.0 + flats * chord_angle / 2.0;

    InstanceMetadata meta;
    meta.family = "spike";
    meta.epsilon = eps;
    meta.seed = seed;
    std::vector<Point> vertices{on_circle(angle)};
    std::size_t g = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (g < k && r == spike_region[g]) {
            const bool down = g + 1 == down_index;
            vertices.push_back(on_circle(angle, down ? 1.0 - h : 1.0 + h));
            vertices.push_back(on_circle(angle));
            meta.spike_parameters.push_back((static_cast<double>(r) + 0.5) / nn);
            if (down) meta.extra["down_parameter"] = format_number(meta.spike_parameters.back());
            ++g;
        } else {
            angle -= chord_angle;
            vertices.push_back(on_circle(angle));
        }
    }
    InstanceBundle b{unit_polyline(std::move(vertices)), eps, meta};
    fill_extremes(b.metadata, b.curve);
    b.metadata.opt_upper_bound = 3 * k + 2;
    b.metadata.extra["k"] = std::to_string(k);
    b.metadata.extra["n"] = std::to_string(n);
    b.metadata.extra["down_index"] = std::to_string(down_index);
    b.metadata.extra["spike_height"] = format_number(h);
    return b;
}

std::size_t hidden_spike_slots(double eps) {
    return static_cast<std::size_t>(std::floor(1.0 / (4.0 * eps) * (1.0 + 1e-12)));
}

InstanceBundle hidden_spike_instance(double eps, std::size_t slot) {
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const std::size_t slots = hidden_spike_slots(eps);
    if (slots < 2) throw std::invalid_argument("hidden spike needs 1/(4 eps) >= 2");
    if (slot < 1 || slot > slots)
        throw std::invalid_argument("slot must lie in [1, " + std::to_string(slots) + "]");

    const double x1 = 4.0 * eps * static_cast<double>(slot - 1);
    const double tip = x1 + 2.0 * eps;
    double x2 = x1 + 4.0 * eps;
    if (std::abs(x2 - 1.0) <= 1e-12) x2 = 1.0;
    const Point base{0.0, 2.5 * eps};
    const Point bottom{0.0, 0.5 * eps};

    std::vector<double> knots;
    std::vector<Point> vertices;
    if (x1 > 0.0) {
        knots.push_back(0.0);
        vertices.push_back(base);
    }
    knots.insert(knots.end(), {x1, tip, x2});
    vertices.insert(vertices.end(), {base, bottom, base});
    if (x2 < 1.0) {
        knots.push_back(1.0);
        vertices.push_back(base);
    }

    InstanceMetadata meta;
    meta.family = "hidden-spike";
    meta.epsilon = eps;
    meta.d_min = 0.5 * eps;
    meta.d_max = 2.5 * eps;
    meta.opt_upper_bound = 1;
    meta.spike_parameters = {tip};
    meta.extra["slot"] = std::to_string(slot);
    meta.extra["slots"] = std::to_string(slots);
    return {Polyline::with_knots(std::move(knots), std::move(vertices)), eps, meta};
}

double relative_spike_threshold(double eps, Kind kind) {
    const double base = std::sqrt(eps * eps + 2.0 * eps) / (2.0 * eps + 2.0);
    return kind == Kind::nearest ? base : (1.0 + eps) * base;
}

InstanceBundle relative_segment_family(std::size_t k, double eps, std::size_t down_index, std::uint64_t seed,
                                       Kind kind, std::optional<double> spike_ratio) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("relative segment family needs 0 < epsilon < 1");
    if (k < 1) throw std::invalid_argument("relative segment family needs k >= 1");
    if (down_index < 1 || down_index > k) throw std::invalid_argument("down_index must lie in [1, k]");

    const bool nearest = kind == Kind::nearest;
    const double ratio = spike_ratio.value_or(nearest ? std::sqrt(eps) : (1.0 + eps) * std::sqrt(eps));
    const double threshold = relative_spike_threshold(eps, kind);
    if (!(ratio > threshold))
        throw std::invalid_argument("spike ratio S/L = " + format_number(ratio) + " violates S/L > " +
                                    (nearest ? "" : "(1+eps) ") + "sqrt(eps^2+2eps)/(2eps+2) = " +
                                    format_number(threshold));
    const double L = 1.0 / (static_cast<double>(k) * (1.0 + 2.0 * ratio));
    const double S = ratio * L;
    const double D = L / (2.0 * std::sqrt(eps * (2.0 + eps)));
    const bool has_inward = nearest || k > 1;
    if (has_inward && !(S < D))
        throw std::invalid_argument("inward spike of length " + format_number(S) + " would reach the origin (D = " +
                                    format_number(D) + ")");

    std::mt19937_64 rng(seed);
    const Point left{-L / 2.0, D};
    const Point right{L / 2.0, D};
    InstanceMetadata meta;
    meta.family = nearest ? "rel-segments" : "rel-segments-farthest";
    meta.epsilon = eps;
    meta.seed = seed;
    std::vector<Point> vertices{left};
    for (std::size_t g = 0; g < k; ++g) {
        const Point& from = g % 2 == 0 ? left : right;
        const Point& to = g % 2 == 0 ? right : left;
        const double u = L * uniform01(rng);
        const Point base = lerp(from, to, u / L);
        const bool special = g + 1 == down_index;
        const bool inward = nearest ? special : !special;
        const Point tip = base + (base / base.norm()) * (inward ? -S : S);
        vertices.insert(vertices.end(), {base, tip, base, to});
        meta.spike_parameters.push_back(static_cast<double>(g) * (L + 2.0 * S) + u + S);
        if (special) meta.extra["down_parameter"] = format_number(meta.spike_parameters.back());
    }
    InstanceBundle b{unit_polyline(std::move(vertices)), eps, meta};
    fill_extremes(b.metadata, b.curve);
    b.metadata.opt_upper_bound = 5 * k;
    b.metadata.extra["k"] = std::to_string(k);
    b.metadata.extra["down_index"] = std::to_string(down_index);
    b.metadata.extra["kind"] = std::string(to_string(kind));
    b.metadata.extra["L"] = format_number(L);
    b.metadata.extra["S"] = format_number(S);
    b.metadata.extra["D"] = format_number(D);
    return b;
}

InstanceBundle random_polyline(std::size_t n_vertices, std::size_t dim, std::uint64_t seed, double clearance) {
    if (n_vertices < 2) throw std::invalid_argument("random polyline needs at least 2 vertices");
    if (dim < 1) throw std::invalid_argument("random polyline needs dimension >= 1");
    if (!(clearance >= 0.0)) throw std::invalid_argument("clearance must be non-negative");

    std::mt19937_64 rng(seed);
    const Point origin = Point::zero(dim);
    std::vector<Point> vertices{random_direction(rng, dim) * (clearance + uniform01(rng))};
    std::vector<double> lengths(n_vertices - 1);
    double total = 0.0;
    for (double& l : lengths) total += (l = 0.1 + uniform01(rng));
    for (double& l : lengths) l /= total;

    for (double len : lengths) {
        const Point& from = vertices.back();
        Point next;
        bool placed = false;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
            next = from + random_direction(rng, dim) * len;
            placed = segment_distance(from, next, origin) >= clearance;
        }
        // Moving radially outward never approaches the origin.
        if (!placed) next = from + (from.norm() > 0.0 ? from / from.norm() : random_direction(rng, dim)) * len;
        vertices.push_back(std::move(next));
    }

    InstanceMetadata meta;
    meta.family = "random";
    meta.seed = seed;
    meta.extra["vertices"] = std::to_string(n_vertices);
    meta.extra["dim"] = std::to_string(dim);
    meta.extra["clearance"] = format_number(clearance);
    InstanceBundle b{unit_polyline(std::move(vertices)), 0.0, meta};
    fill_extremes(b.metadata, b.curve);
    return b;
}

std::vector<double> thinned_corner_proofset(const InstanceBundle& bundle, const Query& q) {
    const Curve c = bundle.canonical();
    std::vector<double> params;
    for (double t : bundle.curve.knots())
        if (params.empty() || t > params.back()) params.push_back(t);
    for (std::size_t i = 1; i + 1 < params.size();) {
        std::vector<double> trial = params;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (check(sample_proofset(c, trial, q)).pass)
            params = std::move(trial);
        else
            ++i;
    }
    return params;
}

void write_metadata(std::ostream& out, const InstanceMetadata& meta) {
    out << "family=" << meta.family << '\n';
    out << "epsilon=" << format_number(meta.epsilon) << '\n';
    out << "d_min=" << (meta.d_min ? format_number(*meta.d_min) : "NA") << '\n';
    out << "d_max=" << (meta.d_max ? format_number(*meta.d_max) : "NA") << '\n';
    out << "opt_upper_bound=" << (meta.opt_upper_bound ? std::to_string(*meta.opt_upper_bound) : "NA") << '\n';
    out << "spike_parameters=";
    for (std::size_t i = 0; i < meta.spike_parameters.size(); ++i)
        out << (i ? "," : "") << format_number(meta.spike_parameters[i]);
    out << '\n';
    out << "seed=" << meta.seed << '\n';
    for (const auto& [k, v] : meta.extra) out << k << '=' << v << '\n';
}

InstanceMetadata parse_metadata(std::istream& in, const std::string& source) {
    InstanceMetadata meta;
    std::string line;
    std::size_t lineno = 0;
    auto number = [&](const std::string& v) {
        const auto x = text::parse_number(v);
        if (!x) throw ParseError(source, lineno, "bad number '" + v + "'");
        return *x;
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view body = text::trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto kv = text::key_value(body);
        if (!kv) throw ParseError(source, lineno, "expected key=value");
        const auto& [key, value] = *kv;
        if (key == "family") {
            meta.family = value;
        } else if (key == "epsilon") {
            meta.epsilon = number(value);
        } else if (key == "d_min") {
            if (value != "NA") meta.d_min = number(value);
        } else if (key == "d_max") {
            if (value != "NA") meta.d_max = number(value);
        } else if (key == "opt_upper_bound") {
            if (value != "NA") meta.opt_upper_bound = static_cast<std::size_t>(number(value));
        } else if (key == "spike_parameters") {
            if (!value.empty())
                for (auto f : text::split(value, ',')) meta.spike_parameters.push_back(number(std::string(f)));
        } else if (key == "seed") {
            meta.seed = static_cast<std::uint64_t>(number(value));
        } else {
            meta.extra[key] = value;
        }
    }
    if (meta.family.empty()) throw ParseError(source, lineno, "metadata has no family");
    return meta;
}

void write_bundle(const std::string& dir, const InstanceBundle& bundle) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream curve(fs::path(dir) / "curve.txt");
    std::ofstream meta(fs::path(dir) / "metadata.txt");
    if (!curve || !meta) throw std::runtime_error("cannot write bundle into '" + dir + "'");
    write_polyline(curve, bundle.curve, true);
    write_metadata(meta, bundle.metadata);
}

InstanceBundle read_bundle(const std::string& dir) {
    namespace fs = std::filesystem;
    const std::string meta_path = (fs::path(dir) / "metadata.txt").string();
    std::ifstream meta_in(meta_path);
    if (!meta_in) throw ParseError("cannot open bundle metadata '" + meta_path + "'");
    InstanceMetadata meta = parse_metadata(meta_in, meta_path);
    const PolylineFile file = read_polyline_file((fs::path(dir) / "curve.txt").string());
    try {
        Polyline poly = file.polyline();
        if (file.knots.empty()) poly = poly.rescaled_to_unit();
        return {std::move(poly), meta.epsilon, std::move(meta)};
    } catch (const std::invalid_argument& e) {
        throw ParseError(dir + ": " + e.what());
    }
}

}  // namespace lipcurve
