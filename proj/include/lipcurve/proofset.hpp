#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lipcurve/curve.hpp"
#include "lipcurve/point.hpp"
#include "lipcurve/query.hpp"

namespace lipcurve {

/// Sampled parameters 0 = x1 < ... < xn = 1 with their curve points. A set is a
/// proof set for a query when the gap ellipses certify the best sample.
struct ProofSet {
    std::vector<double> params;
    std::vector<Point> points;
    Query mode;

    /// Throws std::invalid_argument unless params are strictly increasing,
    /// start at 0, end at 1 and match points one to one.
    void validate() const;
};

/// Sorts (param, point) pairs and drops exact duplicates before validating.
ProofSet make_proofset(std::vector<double> params, std::vector<Point> points, const Query& mode);

/// Samples the curve at params. The caller supplies the full parameter list.
ProofSet sample_proofset(const Curve& curve, std::vector<double> params, const Query& mode);

struct ProofVerdict {
    Kind kind = Kind::nearest;
    bool pass = false;
    /// Non-negative exactly when the inequality of the mode holds (before the
    /// 1e-9 absolute slack).
    double margin = 0.0;
    /// Best sample distance: min |C(xi)| for nearest, max for farthest.
    double incumbent = 0.0;
    /// Extremal gap bound: min closest-possible (nearest) or max
    /// farthest-possible (farthest) over consecutive gaps.
    double bound = 0.0;
    std::size_t incumbent_index = 0;
    /// Index i of the gap [x_i, x_{i+1}] attaining `bound`.
    std::size_t critical_gap = 0;

    /// Certified bracket [lower, upper] around the true extremum.
    double lower() const { return kind == Kind::nearest ? bound : incumbent; }
    double upper() const { return kind == Kind::nearest ? incumbent : bound; }
};

inline constexpr double kProofSlack = 1e-9;

ProofVerdict check(const ProofSet& ps);

/// Grid-restricted minimum proof set (an upper bound on OPT).
struct OptEstimate {
    double grid_step = 0.0;
    std::size_t value = 0;
    std::vector<double> witness;
};

inline constexpr std::size_t kDefaultOracleCap = 512;

/// Grid G = {0, delta, 2 delta, ..., 1}. For each candidate best node, finds the
/// fewest grid nodes on a path 0 -> ... -> 1 through it whose nodes and gaps
/// are admissible for that candidate value. Requires delta <= eps/4; throws
/// OracleCapExceeded when |G| exceeds cap.
OptEstimate min_proofset_grid(const Curve& curve, const Query& mode, double delta,
                              std::size_t cap = kDefaultOracleCap);

/// Default grid step eps/8.
OptEstimate min_proofset_grid(const Curve& curve, const Query& mode);

/// Grid nodes {0, delta, ..., 1}; the last node is exactly 1.
std::vector<double> parameter_grid(double delta);

struct DoublingReport {
    std::size_t value_eps = 0;
    std::size_t value_half = 0;
    bool holds = false;
};

/// value(eps/2) <= 2 value(eps) + 2 for nearest/absolute, same grid step.
DoublingReport opt_doubling_check(const Curve& curve, double eps, double delta,
                                  std::size_t cap = kDefaultOracleCap);

/// Lipschitz curve that agrees with every sample of `ps` yet passes through
/// the extremal point of the critical gap ellipse: straight segments on every
/// other gap, and on the critical gap C(x_i) -> p -> C(x_{i+1}) with the
/// parameter split in proportion to the two lengths.
struct Counterexample {
    Polyline curve;
    Point detour_point;
    double detour_distance = 0.0;
    std::size_t gap = 0;
};
Counterexample make_detour_counterexample(const ProofSet& ps);

/// Text format: "# proofset kind=... error=... epsilon=..." followed by rows
/// "parameter, coord1, ..., coordd".
void write_proofset(std::ostream& out, const ProofSet& ps);
ProofSet parse_proofset(std::istream& in, const std::string& source = "<input>");
ProofSet read_proofset_file(const std::string& path);

/// Header mode of a proof-set stream, if present.
struct ProofSetFile {
    std::vector<double> params;
    std::vector<Point> points;
    std::optional<Query> mode;
};
ProofSetFile parse_proofset_rows(std::istream& in, const std::string& source = "<input>");

}  // namespace lipcurve
