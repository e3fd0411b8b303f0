#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lipcurve/curve.hpp"
#include "lipcurve/point.hpp"
#include "lipcurve/proofset.hpp"
#include "lipcurve/query.hpp"

namespace lipcurve {

namespace trace {
struct Sample {
    double t;
    Point point;
};
struct Extract {
    double key;
    double x1;
    double x2;
    std::uint64_t seq;
};
struct Insert {
    double key;
    double x1;
    double x2;
    std::uint64_t seq;
};
struct Terminate {
    std::string reason;
};
}  // namespace trace

using TraceEvent = std::variant<trace::Sample, trace::Extract, trace::Insert, trace::Terminate>;

/// One line per event, numbers in shortest round-trip form.
std::string format_event(const TraceEvent& e);
void write_trace(std::ostream& out, const std::vector<TraceEvent>& events);

struct SolveResult {
    double x_star = 0.0;
    Point point;
    double distance = 0.0;
    double certified_lower = 0.0;
    double certified_upper = 0.0;
    std::size_t samples_used = 0;
    /// Sampled parameters and points in evaluation order.
    std::vector<double> sample_params;
    std::vector<Point> sample_points;
    std::vector<TraceEvent> trace;

    ProofSet proof_set(const Query& q) const;
};

struct SolveOptions {
    /// Maximum number of curve evaluations; unset means default_budget(eps).
    std::optional<std::size_t> budget;
    bool record_trace = true;
    /// Off only for hypothetical executions in analysis code (e.g. an
    /// absolute-error run with eps >= 1/2); the loop itself is valid for any
    /// eps > 0.
    bool validate_query = true;
};

/// 10 * ceil(1/eps) + 64.
std::size_t default_budget(double eps);

/// Thrown when a run needs more samples than its budget: either the true
/// extremum is 0 in relative mode or the Lipschitz declaration is wrong.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(SolveResult partial, std::size_t budget);
    const SolveResult& partial() const { return partial_; }
    std::size_t budget() const { return budget_; }

private:
    SolveResult partial_;
    std::size_t budget_;
};

/// Best-first bisection on focal-ellipse bounds. Stops as soon as the sampled
/// parameters form a proof set for q.
SolveResult solve(InstrumentedCurve& curve, const Query& q, const SolveOptions& options = {});
SolveResult solve(const Curve& curve, const Query& q, const SolveOptions& options = {});

/// Samples 0, 2 eps, 4 eps, ..., 1 (absolute mode only).
SolveResult uniform_baseline(InstrumentedCurve& curve, const Query& q);
SolveResult uniform_baseline(const Curve& curve, const Query& q);
std::vector<double> uniform_grid(double eps);

struct ReplayReport {
    bool ok = true;
    /// "subdivision", "monotone", "midpoint", "proofset", "insert-key",
    /// "structure"; empty when ok.
    std::string check;
    std::size_t event_index = 0;
    std::string message;
};

/// Re-derives the run shape from the trace alone (no curve access).
ReplayReport replay(const std::vector<TraceEvent>& events, const Query& q);

}  // namespace lipcurve
