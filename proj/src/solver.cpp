#include "lipcurve/solver.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "lipcurve/ellipse.hpp"
#include "lipcurve/text.hpp"

namespace lipcurve {

namespace {

using text::format_number;

double gap_key(Kind kind, const Point& p, const Point& q, double s) {
    const FocalEllipse e{p, q, s};
    return kind == Kind::nearest ? closest_possible(e) : farthest_possible(e);
}

bool better(Kind kind, double candidate, double incumbent) {
    return kind == Kind::nearest ? candidate < incumbent : candidate > incumbent;
}

bool terminates(const Query& q, double d_hat, double key) {
    const double eps = q.epsilon;
    if (q.error == ErrorMode::absolute)
        return q.kind == Kind::nearest ? d_hat - eps <= key : key <= d_hat + eps;
    if (q.kind == Kind::nearest) return key > 0.0 && d_hat / key <= 1.0 + eps;
    return d_hat > 0.0 && key / d_hat <= 1.0 + eps;
}

struct Entry {
    double key;
    double x1;
    double x2;
    std::size_t i1;  // indices into the sample arrays
    std::size_t i2;
    std::uint64_t seq;
};

// Priority order: best key first, then FIFO on the insertion sequence.
struct EntryOrder {
    Kind kind;
    bool operator()(const Entry& a, const Entry& b) const {
        if (a.key != b.key) return kind == Kind::nearest ? a.key > b.key : a.key < b.key;
        return a.seq > b.seq;
    }
};

class Run {
public:
    Run(InstrumentedCurve& curve, const Query& q, const SolveOptions& opt)
        : curve_(curve), q_(q), opt_(opt), budget_(opt.budget.value_or(default_budget(q.epsilon))) {}

    SolveResult execute() {
        const std::size_t i0 = sample(0.0);
        const std::size_t i1 = sample(1.0);
        // Strict comparison: exact ties go to parameter 1.
        best_ = better(q_.kind, dist_[i0], dist_[i1]) ? i0 : i1;

        std::priority_queue<Entry, std::vector<Entry>, EntryOrder> queue(EntryOrder{q_.kind});
        queue.push(make_entry(0.0, 1.0, i0, i1));
        while (true) {
            const Entry top = queue.top();
            queue.pop();
            record(trace::Extract{top.key, top.x1, top.x2, top.seq});
            key_ = top.key;
            if (terminates(q_, dist_[best_], top.key)) {
                record(trace::Terminate{"certified"});
                return finish();
            }
            const double x = (top.x1 + top.x2) / 2.0;
            const std::size_t im = sample(x);
            if (better(q_.kind, dist_[im], dist_[best_])) best_ = im;
            queue.push(make_entry(top.x1, x, top.i1, im));
            queue.push(make_entry(x, top.x2, im, top.i2));
        }
    }

private:
    std::size_t sample(double t) {
        if (result_.sample_params.size() >= budget_) {
            record(trace::Terminate{"budget"});
            throw BudgetExceeded(finish(), budget_);
        }
        const Point& p = curve_.evaluate(t);
        result_.sample_params.push_back(t);
        result_.sample_points.push_back(p);
        dist_.push_back(p.norm());
        record(trace::Sample{t, p});
        return dist_.size() - 1;
    }

    Entry make_entry(double x1, double x2, std::size_t i1, std::size_t i2) {
        const Entry e{gap_key(q_.kind, result_.sample_points[i1], result_.sample_points[i2], x2 - x1), x1, x2, i1, i2,
                      seq_++};
        record(trace::Insert{e.key, x1, x2, e.seq});
        return e;
    }

    void record(TraceEvent e) {
        if (opt_.record_trace) result_.trace.push_back(std::move(e));
    }

    SolveResult finish() {
        result_.samples_used = result_.sample_params.size();
        if (dist_.empty()) return result_;
        result_.x_star = result_.sample_params[best_];
        result_.point = result_.sample_points[best_];
        result_.distance = dist_[best_];
        if (q_.kind == Kind::nearest) {
            result_.certified_lower = key_;
            result_.certified_upper = dist_[best_];
        } else {
            result_.certified_lower = dist_[best_];
            result_.certified_upper = key_;
        }
        return result_;
    }

    InstrumentedCurve& curve_;
    Query q_;
    SolveOptions opt_;
    std::size_t budget_;
    SolveResult result_;
    std::vector<double> dist_;
    std::size_t best_ = 0;
    double key_ = 0.0;
    std::uint64_t seq_ = 0;
};

struct EventWriter {
    std::ostringstream& os;
    void operator()(const trace::Sample& e) const {
        os << "sample t=" << format_number(e.t) << " point=";
        for (std::size_t i = 0; i < e.point.dim(); ++i) os << (i ? "," : "") << format_number(e.point[i]);
    }
    void operator()(const trace::Extract& e) const {
        os << "extract key=" << format_number(e.key) << " x1=" << format_number(e.x1) << " x2=" << format_number(e.x2)
           << " seq=" << e.seq;
    }
    void operator()(const trace::Insert& e) const {
        os << "insert key=" << format_number(e.key) << " x1=" << format_number(e.x1) << " x2=" << format_number(e.x2)
           << " seq=" << e.seq;
    }
    void operator()(const trace::Terminate& e) const { os << "terminate reason=" << e.reason; }
};

}  // namespace

std::string format_event(const TraceEvent& e) {
    std::ostringstream os;
    std::visit(EventWriter{os}, e);
    return os.str();
}

void write_trace(std::ostream& out, const std::vector<TraceEvent>& events) {
    for (const auto& e : events) out << format_event(e) << '\n';
}

ProofSet SolveResult::proof_set(const Query& q) const { return make_proofset(sample_params, sample_points, q); }

std::size_t default_budget(double eps) { return 10 * static_cast<std::size_t>(std::ceil(1.0 / eps)) + 64; }

BudgetExceeded::BudgetExceeded(SolveResult partial, std::size_t budget)
    : std::runtime_error("sample budget of " + std::to_string(budget) +
                         " exceeded; the extremum may be 0 (relative mode) or the Lipschitz bound is wrong"),
      partial_(std::move(partial)),
      budget_(budget) {}

SolveResult solve(InstrumentedCurve& curve, const Query& q, const SolveOptions& options) {
    if (options.validate_query)
        q.validate();
    else if (!(q.epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    return Run(curve, q, options).execute();
}

SolveResult solve(const Curve& curve, const Query& q, const SolveOptions& options) {
    InstrumentedCurve ic(curve);
    return solve(ic, q, options);
}

std::vector<double> uniform_grid(double eps) {
    const double step = 2.0 * eps;
    const auto m = static_cast<std::size_t>(std::ceil((1.0 / step) * (1.0 - 1e-12)));
    std::vector<double> g;
    for (std::size_t i = 0; i < m; ++i) g.push_back(static_cast<double>(i) * step);
    g.push_back(1.0);
    return g;
}

SolveResult uniform_baseline(InstrumentedCurve& curve, const Query& q) {
    q.validate();
    if (q.error != ErrorMode::absolute) throw std::invalid_argument("uniform baseline is defined for absolute error");
    SolveResult r;
    for (double t : uniform_grid(q.epsilon)) {
        const Point& p = curve.evaluate(t);
        r.sample_params.push_back(t);
        r.sample_points.push_back(p);
        r.trace.emplace_back(trace::Sample{t, p});
    }
    const ProofVerdict v = check(r.proof_set(q));
    r.samples_used = r.sample_params.size();
    r.x_star = r.sample_params[v.incumbent_index];
    r.point = r.sample_points[v.incumbent_index];
    r.distance = v.incumbent;
    r.certified_lower = v.lower();
    r.certified_upper = v.upper();
    r.trace.emplace_back(trace::Terminate{v.pass ? "certified" : "grid exhausted"});
    return r;
}

SolveResult uniform_baseline(const Curve& curve, const Query& q) {
    InstrumentedCurve ic(curve);
    return uniform_baseline(ic, q);
}

ReplayReport replay(const std::vector<TraceEvent>& events, const Query& q) {
    auto fail = [](std::string check, std::size_t i, std::string msg) {
        return ReplayReport{false, std::move(check), i, std::move(msg)};
    };
    constexpr double kKeySlack = 1e-10;

    std::unordered_map<std::uint64_t, std::size_t> sample_at;  // parameter bits -> sample index
    std::vector<double> params;
    std::vector<Point> points;
    struct Live {
        double key, x1, x2;
    };
    std::unordered_map<std::uint64_t, Live> live;
    auto bits = [](double t) { return std::bit_cast<std::uint64_t>(t + 0.0); };

    std::optional<double> last_key;
    trace::Extract pending{};  // extracted, not yet resolved
    bool has_pending = false;
    double midpoint = 0.0;
    bool has_midpoint = false;
    int children = 0;
    bool terminated = false;

    for (std::size_t i = 0; i < events.size(); ++i) {
        const TraceEvent& ev = events[i];
        if (terminated) return fail("structure", i, "event after terminate");
        if (const auto* s = std::get_if<trace::Sample>(&ev)) {
            if (has_pending) {
                const double x1 = pending.x1, x2 = pending.x2;
                if (q.error == ErrorMode::absolute && x2 - x1 <= 2.0 * q.epsilon)
                    return fail("subdivision", i, "interval of length " + format_number(x2 - x1) + " <= 2 eps was subdivided");
                if (s->t != (x1 + x2) / 2.0)
                    return fail("midpoint", i, "sample " + format_number(s->t) + " is not the midpoint of [" +
                                                   format_number(x1) + ", " + format_number(x2) + "]");
                midpoint = s->t;
                has_midpoint = true;
                children = 0;
            } else if (params.size() >= 2 || last_key) {
                return fail("structure", i, "sample without a preceding extract");
            }
            if (!sample_at.emplace(bits(s->t), params.size()).second)
                return fail("structure", i, "parameter sampled twice");
            params.push_back(s->t);
            points.push_back(s->point);
        } else if (const auto* in = std::get_if<trace::Insert>(&ev)) {
            const auto a = sample_at.find(bits(in->x1));
            const auto b = sample_at.find(bits(in->x2));
            if (a == sample_at.end() || b == sample_at.end())
                return fail("insert-key", i, "insert endpoint was never sampled");
            const double key = gap_key(q.kind, points[a->second], points[b->second], in->x2 - in->x1);
            if (std::abs(key - in->key) > 1e-12 * std::max(1.0, std::abs(key)))
                return fail("insert-key", i, "insert key " + format_number(in->key) + " != recomputed " + format_number(key));
            if (has_pending) {
                const bool left = children == 0 && has_midpoint && in->x1 == pending.x1 && in->x2 == midpoint;
                const bool right = children == 1 && has_midpoint && in->x1 == midpoint && in->x2 == pending.x2;
                if (!left && !right) return fail("midpoint", i, "children do not split the extracted interval at its midpoint");
                if (++children == 2) has_pending = has_midpoint = false;
            }
            if (!live.emplace(in->seq, Live{in->key, in->x1, in->x2}).second)
                return fail("structure", i, "duplicate insert sequence number");
        } else if (const auto* ex = std::get_if<trace::Extract>(&ev)) {
            if (has_pending) return fail("structure", i, "extract before the previous interval was resolved");
            const auto it = live.find(ex->seq);
            if (it == live.end() || it->second.key != ex->key || it->second.x1 != ex->x1 || it->second.x2 != ex->x2)
                return fail("structure", i, "extract does not match a queued interval");
            live.erase(it);
            if (last_key) {
                const bool ok = q.kind == Kind::nearest ? ex->key >= *last_key - kKeySlack : ex->key <= *last_key + kKeySlack;
                if (!ok)
                    return fail("monotone", i, "extracted key " + format_number(ex->key) + " after " + format_number(*last_key));
            }
            last_key = ex->key;
            pending = *ex;
            has_pending = true;
        } else {
            const auto& term = std::get<trace::Terminate>(ev);
            if (term.reason != "certified") return fail("structure", i, "run ended with reason '" + term.reason + "'");
            if (!has_pending || has_midpoint) return fail("structure", i, "terminate must follow an extract");
            terminated = true;
        }
    }
    if (!terminated) return fail("structure", events.size(), "trace has no terminate event");
    try {
        const ProofVerdict v = check(make_proofset(params, points, q));
        if (!v.pass)
            return fail("proofset", events.size(), "sampled set is not a proof set (margin " + format_number(v.margin) + ")");
    } catch (const std::invalid_argument& e) {
        return fail("proofset", events.size(), e.what());
    }
    return {};
}

}  // namespace lipcurve
