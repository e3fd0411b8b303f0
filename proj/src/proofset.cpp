#include "lipcurve/proofset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lipcurve/ellipse.hpp"
#include "lipcurve/errors.hpp"
#include "lipcurve/text.hpp"

namespace lipcurve {

namespace {

constexpr double kTieSlack = 1e-12;

double gap_bound(Kind kind, const Point& p, const Point& q, double s) {
    const FocalEllipse e{p, q, s};
    return kind == Kind::nearest ? closest_possible(e) : farthest_possible(e);
}

}  // namespace

void ProofSet::validate() const {
    if (params.size() != points.size()) throw std::invalid_argument("proof set params and points differ in size");
    if (params.size() < 2) throw std::invalid_argument("proof set needs at least the endpoints 0 and 1");
    if (params.front() != 0.0 || params.back() != 1.0)
        throw std::invalid_argument("proof set must contain the endpoints 0 and 1");
    for (std::size_t i = 1; i < params.size(); ++i) {
        if (!(params[i] > params[i - 1])) throw std::invalid_argument("proof set params must be strictly increasing");
        if (points[i].dim() != points[0].dim()) throw std::invalid_argument("proof set points disagree in dimension");
    }
}

ProofSet make_proofset(std::vector<double> params, std::vector<Point> points, const Query& mode) {
    if (params.size() != points.size()) throw std::invalid_argument("proof set params and points differ in size");
    std::vector<std::size_t> order(params.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return params[i] < params[j]; });
    ProofSet ps{{}, {}, mode};
    for (auto i : order) {
        if (!ps.params.empty() && ps.params.back() == params[i]) continue;
        ps.params.push_back(params[i]);
        ps.points.push_back(std::move(points[i]));
    }
    ps.validate();
    return ps;
}

ProofSet sample_proofset(const Curve& curve, std::vector<double> params, const Query& mode) {
    std::vector<Point> points;
    points.reserve(params.size());
    for (double t : params) points.push_back(curve(t));
    return make_proofset(std::move(params), std::move(points), mode);
}

ProofVerdict check(const ProofSet& ps) {
    ps.validate();
    const Kind kind = ps.mode.kind;
    const double eps = ps.mode.epsilon;
    ProofVerdict v;
    v.kind = kind;

    v.incumbent = ps.points[0].norm();
    for (std::size_t i = 1; i < ps.points.size(); ++i) {
        const double d = ps.points[i].norm();
        if (kind == Kind::nearest ? d < v.incumbent : d > v.incumbent) {
            v.incumbent = d;
            v.incumbent_index = i;
        }
    }
    v.bound = kind == Kind::nearest ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t i = 0; i + 1 < ps.params.size(); ++i) {
        const double b = gap_bound(kind, ps.points[i], ps.points[i + 1], ps.params[i + 1] - ps.params[i]);
        if (kind == Kind::nearest ? b < v.bound : b > v.bound) {
            v.bound = b;
            v.critical_gap = i;
        }
    }

    const double U = v.upper();
    const double L = v.lower();
    if (ps.mode.error == ErrorMode::absolute) {
        v.margin = L - (U - eps);
        v.pass = v.margin + kProofSlack >= 0.0;
    } else {
        v.margin = (1.0 + eps) * L - U;
        v.pass = L > 0.0 && U / L <= 1.0 + eps;
    }
    return v;
}

std::vector<double> parameter_grid(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("grid step must lie in (0,1]");
    const auto m = static_cast<std::size_t>(std::ceil((1.0 / delta) * (1.0 - 1e-12)));
    std::vector<double> g;
    g.reserve(m + 1);
    for (std::size_t j = 0; j < m; ++j) g.push_back(static_cast<double>(j) * delta);
    g.push_back(1.0);
    return g;
}

OptEstimate min_proofset_grid(const Curve& curve, const Query& mode, double delta, std::size_t cap) {
    mode.validate();
    if (!(delta > 0.0) || delta > mode.epsilon / 4.0 * (1.0 + 1e-12))
        throw std::invalid_argument("grid step must satisfy 0 < delta <= epsilon/4");
    const auto predicted = 1 + static_cast<std::size_t>(std::ceil((1.0 / delta) * (1.0 - 1e-12)));
    if (predicted > cap) throw OracleCapExceeded(predicted, cap);

    const std::vector<double> g = parameter_grid(delta);
    const std::size_t n = g.size();
    std::vector<Point> pts;
    std::vector<double> dist;
    pts.reserve(n);
    for (double t : g) {
        pts.push_back(curve(t));
        dist.push_back(pts.back().norm());
    }
    // bound[i * n + l] for i < l.
    std::vector<double> bound(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = i + 1; l < n; ++l) bound[i * n + l] = gap_bound(mode.kind, pts[i], pts[l], g[l] - g[i]);

    const bool nearest = mode.kind == Kind::nearest;
    const bool absolute = mode.error == ErrorMode::absolute;
    const double eps = mode.epsilon;
    auto node_ok = [&](std::size_t i, double v) {
        return nearest ? dist[i] >= v - kTieSlack : dist[i] <= v + kTieSlack;
    };
    auto edge_ok = [&](std::size_t i, std::size_t l, double v) {
        const double b = bound[i * n + l];
        if (nearest) return absolute ? b >= v - eps - kTieSlack : b > 0.0 && v <= (1.0 + eps) * b + kTieSlack;
        return absolute ? b <= v + eps + kTieSlack : v > 0.0 && b <= (1.0 + eps) * v + kTieSlack;
    };

    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
    OptEstimate best{delta, kInf, {}};
    std::vector<std::size_t> cost(n), prev(n);
    // Fewest nodes from `from` to every l in [from, to] using admissible steps.
    auto sweep = [&](std::size_t from, std::size_t to, double v) {
        std::fill(cost.begin() + static_cast<std::ptrdiff_t>(from), cost.begin() + static_cast<std::ptrdiff_t>(to) + 1, kInf);
        cost[from] = 1;
        for (std::size_t l = from + 1; l <= to; ++l) {
            if (!node_ok(l, v)) continue;
            for (std::size_t i = from; i < l; ++i) {
                if (cost[i] == kInf || cost[i] + 1 >= cost[l]) continue;
                if (edge_ok(i, l, v)) {
                    cost[l] = cost[i] + 1;
                    prev[l] = i;
                }
            }
        }
        return cost[to];
    };
    // Among sets of equal size, prefer the one whose candidate is the best sample.
    double best_v = 0.0;
    auto improves = [&](std::size_t size, double v) {
        if (size != best.value) return size < best.value;
        return nearest ? v < best_v : v > best_v;
    };
    for (std::size_t j = 0; j < n; ++j) {
        const double v = dist[j];
        if (!node_ok(0, v) || !node_ok(n - 1, v)) continue;
        const std::size_t left = sweep(0, j, v);
        if (left == kInf) continue;
        std::vector<double> path;
        for (std::size_t l = j; l != 0; l = prev[l]) path.push_back(g[l]);
        path.push_back(g[0]);
        std::reverse(path.begin(), path.end());
        if (j == n - 1) {
            if (improves(left, v)) best = {delta, left, path}, best_v = v;
            continue;
        }
        const std::size_t right = sweep(j, n - 1, v);
        if (right == kInf || !improves(left + right - 1, v)) continue;
        std::vector<double> tail;
        for (std::size_t l = n - 1; l != j; l = prev[l]) tail.push_back(g[l]);
        std::reverse(tail.begin(), tail.end());
        path.insert(path.end(), tail.begin(), tail.end());
        best = {delta, left + right - 1, path};
        best_v = v;
    }
    if (best.value == kInf) throw std::runtime_error("grid oracle found no proof set; grid step too coarse");
    return best;
}

OptEstimate min_proofset_grid(const Curve& curve, const Query& mode) {
    return min_proofset_grid(curve, mode, mode.epsilon / 8.0);
}

DoublingReport opt_doubling_check(const Curve& curve, double eps, double delta, std::size_t cap) {
    DoublingReport r;
    r.value_eps = min_proofset_grid(curve, nearest_abs(eps), delta, cap).value;
    r.value_half = min_proofset_grid(curve, nearest_abs(eps / 2.0), delta, cap).value;
    r.holds = r.value_half <= 2 * r.value_eps + 2;
    return r;
}

Counterexample make_detour_counterexample(const ProofSet& ps) {
    const ProofVerdict v = check(ps);
    const std::size_t i = v.critical_gap;
    const FocalEllipse e{ps.points[i], ps.points[i + 1], ps.params[i + 1] - ps.params[i]};
    const ExtremalPoint ext = ps.mode.kind == Kind::nearest ? closest_point(e) : farthest_point(e);

    std::vector<double> knots;
    std::vector<Point> vertices;
    for (std::size_t j = 0; j < ps.params.size(); ++j) {
        knots.push_back(ps.params[j]);
        vertices.push_back(ps.points[j]);
        if (j != i) continue;
        const double l1 = distance(ps.points[i], ext.point);
        const double l2 = distance(ext.point, ps.points[i + 1]);
        if (!(l1 + l2 > 0.0)) continue;
        const double w = ps.params[i + 1] - ps.params[i];
        knots.push_back(std::min(ps.params[i] + w * (l1 / (l1 + l2)), ps.params[i + 1]));
        vertices.push_back(ext.point);
    }
    return {Polyline::with_knots(std::move(knots), std::move(vertices)), ext.point, ext.distance, i};
}

void write_proofset(std::ostream& out, const ProofSet& ps) {
    out << "# proofset " << ps.mode.describe() << '\n';
    for (std::size_t i = 0; i < ps.params.size(); ++i) {
        out << text::format_number(ps.params[i]);
        for (double c : ps.points[i].coords()) out << ", " << text::format_number(c);
        out << '\n';
    }
}

ProofSetFile parse_proofset_rows(std::istream& in, const std::string& source) {
    ProofSetFile f;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view body = text::trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            std::string_view rest = text::trim(body.substr(1));
            if (!rest.starts_with("proofset")) continue;
            rest = text::trim(rest.substr(8));
            Query q;
            bool have_kind = false, have_error = false, have_eps = false;
            std::size_t pos = 0;
            while (pos < rest.size()) {
                const auto end = std::min(rest.find(' ', pos), rest.size());
                const auto kv = text::key_value(rest.substr(pos, end - pos));
                pos = end + 1;
                if (!kv) continue;
                try {
                    if (kv->first == "kind") {
                        q.kind = parse_kind(kv->second);
                        have_kind = true;
                    } else if (kv->first == "error") {
                        q.error = parse_error_mode(kv->second);
                        have_error = true;
                    } else if (kv->first == "epsilon") {
                        const auto e = text::parse_number(kv->second);
                        if (!e) throw std::invalid_argument("bad epsilon '" + kv->second + "'");
                        q.epsilon = *e;
                        have_eps = true;
                    }
                } catch (const std::invalid_argument& ex) {
                    throw ParseError(source, lineno, ex.what());
                }
            }
            if (!(have_kind && have_error && have_eps))
                throw ParseError(source, lineno, "proofset header needs kind, error and epsilon");
            f.mode = q;
            continue;
        }
        const auto fields = text::split(body, ',');
        if (fields.size() < 2) throw ParseError(source, lineno, "expected 'parameter, coord1, ...'");
        std::vector<double> row;
        for (auto field : fields) {
            const auto num = text::parse_number(field);
            if (!num || !std::isfinite(*num)) throw ParseError(source, lineno, "bad number '" + std::string(field) + "'");
            row.push_back(*num);
        }
        if (!f.points.empty() && row.size() - 1 != f.points.front().dim())
            throw ParseError(source, lineno, "row dimension disagrees with the first row");
        f.params.push_back(row.front());
        f.points.emplace_back(std::vector<double>(row.begin() + 1, row.end()));
    }
    return f;
}

ProofSet parse_proofset(std::istream& in, const std::string& source) {
    ProofSetFile f = parse_proofset_rows(in, source);
    if (!f.mode) throw ParseError(source + ": missing '# proofset kind=... error=... epsilon=...' header");
    try {
        return make_proofset(std::move(f.params), std::move(f.points), *f.mode);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(source + ": " + ex.what());
    }
}

ProofSet read_proofset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open proof-set file '" + path + "'");
    return parse_proofset(in, path);
}

}  // namespace lipcurve
