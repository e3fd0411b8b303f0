#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lipcurve/curve.hpp"
#include "lipcurve/query.hpp"

namespace lipcurve {

struct InstanceMetadata {
    std::string family;
    double epsilon = 0.0;
    std::optional<double> d_min;
    std::optional<double> d_max;
    std::optional<std::size_t> opt_upper_bound;
    /// Parameters of the spike tips, in curve order.
    std::vector<double> spike_parameters;
    std::uint64_t seed = 0;
    /// Family parameters (k, n, down_index, slot, ...), stored as text.
    std::map<std::string, std::string> extra;
};

/// A generated curve in canonical form: knots on [0,1], speed at most 1,
/// query point at the origin.
struct InstanceBundle {
    Polyline curve;
    double epsilon = 0.0;
    InstanceMetadata metadata;

    Curve canonical() const { return as_curve(curve); }
    CurveSpec spec() const { return PolylineSpec{curve.vertices(), curve.knots()}; }
};

/// C(x) = p. The gap condition forces ceil(1/(2 eps)) + 1 samples, recorded
/// as opt_upper_bound. Requires |p| > eps.
InstanceBundle constant_instance(const Point& p, double eps);

/// n = round(1/(3 eps)) regions of parameter width 1/n, split into k groups
/// with one spike each. Flat regions are chords of length 1/n whose endpoints
/// lie on the unit circle; a spike region is a radial out-and-back excursion
/// of height h = 1/(2n) at a seeded region of its group. k - 1 spikes point
/// away from the origin, spike number down_index (1-based) points at it, so
/// d_min = 1 - h is attained only at that tip. Throws when k > n.
InstanceBundle spike_family(std::size_t k, double eps, std::size_t down_index, std::uint64_t seed);

/// (0, 2.5 eps) except on J = (x1, x1 + 4 eps), x1 = 4 eps (slot - 1), where a
/// unit-speed dip reaches (0, eps/2) at x1 + 2 eps. Requires at least two
/// slots of width 4 eps; the remainder after the last slot is flat.
InstanceBundle hidden_spike_instance(double eps, std::size_t slot);

std::size_t hidden_spike_slots(double eps);

/// k overlapping copies of a gadget: a flat run of length L at distance D from
/// the origin (run perpendicular to the foot direction, centered on it) with a
/// radial spike of half-length S at a seeded position. Consecutive copies run
/// in opposite directions so the curve is continuous. For nearest queries
/// copy down_index points toward the origin and the others away; farthest
/// flips every spike. D/L = 1/(2 sqrt(eps(2+eps))), S/L = sqrt(eps) (nearest)
/// or (1+eps) sqrt(eps) (farthest) unless spike_ratio overrides it. Throws
/// when S/L violates the uniqueness inequality or an inward spike would reach
/// the origin.
InstanceBundle relative_segment_family(std::size_t k, double eps, std::size_t down_index, std::uint64_t seed,
                                       Kind kind = Kind::nearest, std::optional<double> spike_ratio = std::nullopt);

/// Smallest S/L for which only the distinguished spike solves the relative
/// problem: sqrt(eps^2 + 2 eps)/(2 eps + 2), times (1 + eps) for farthest.
double relative_spike_threshold(double eps, Kind kind);

/// Seeded unit-length polyline in R^d. Every segment keeps distance >=
/// clearance from the origin; d_min and d_max are exact.
InstanceBundle random_polyline(std::size_t n_vertices, std::size_t dim, std::uint64_t seed, double clearance);

/// Directory with curve.txt (knotted polyline) and metadata.txt (key=value).
void write_bundle(const std::string& dir, const InstanceBundle& bundle);
InstanceBundle read_bundle(const std::string& dir);
void write_metadata(std::ostream& out, const InstanceMetadata& meta);
InstanceMetadata parse_metadata(std::istream& in, const std::string& source = "<input>");

/// All polyline corners form a proof set for any eps (they determine the
/// curve). Greedily drops corners left to right while the set stays a proof
/// set for q; the resulting size bounds OPT from above.
std::vector<double> thinned_corner_proofset(const InstanceBundle& bundle, const Query& q);

}  // namespace lipcurve
