// lipcurve: nearest/farthest point queries on Lipschitz curves, instance
// generation, certificate verification and the adaptive-vs-uniform benchmark.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or invalid
// parameters, 3 sample budget or oracle cap exceeded, 4 malformed input.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lipcurve/lipcurve.hpp"
#include "lipcurve/text.hpp"

namespace fs = std::filesystem;
using namespace lipcurve;
using text::format_number;

namespace {

enum Exit : int { kOk = 0, kVerifyFail = 1, kUsage = 2, kBudget = 3, kMalformed = 4 };

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& s, const char* what) {
    std::vector<double> out;
    for (auto field : text::split(s, ',')) {
        // Fractions such as 1/24 are accepted for convenience.
        if (const auto slash = field.find('/'); slash != std::string_view::npos) {
            const auto num = text::parse_number(field.substr(0, slash));
            const auto den = text::parse_number(field.substr(slash + 1));
            if (!num || !den || *den == 0.0) throw UsageError(std::string("bad ") + what + " '" + s + "'");
            out.push_back(*num / *den);
            continue;
        }
        const auto v = text::parse_number(field);
        if (!v) throw UsageError(std::string("bad ") + what + " '" + s + "'");
        out.push_back(*v);
    }
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LP_SEED")) {
        if (const auto v = text::parse_number(env); v && *v >= 0) return static_cast<std::uint64_t>(*v);
        throw UsageError(std::string("LP_SEED is not a non-negative integer: '") + env + "'");
    }
    return 0;
}

std::string format_point(const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.dim(); ++i) s += (i ? "," : "") + format_number(p[i]);
    return s;
}

// ---------------------------------------------------------------------------
// Curve sources shared by query and verify

struct CurveArgs {
    std::string curve;
    std::string builtin;
    std::optional<double> lipschitz;
    std::string domain;
    std::string query_point;
};

void add_curve_options(CLI::App* cmd, CurveArgs& a) {
    cmd->add_option("--curve", a.curve, "Polyline file, or a bundle directory written by 'gen'");
    cmd->add_option("--builtin", a.builtin, "Built-in curve")->check(CLI::IsMember({"segment", "constant", "arc"}));
    cmd->add_option("--lipschitz", a.lipschitz, "Declared Lipschitz constant (required for polyline files)");
    cmd->add_option("--domain", a.domain, "Parameter domain 'a,b' of a polyline file without knots");
    cmd->add_option("--query-point", a.query_point, "Query point 'x1,...,xd' (default: origin)");
}

CurveSpec builtin_spec(const std::string& name) {
    if (name == "segment") return SegmentSpec{{-0.5, 0.3}, {0.5, 0.3}};
    if (name == "constant") return ConstantSpec{{0.0, 1.0}};
    return CircleArcSpec{{0.0, 2.0}, 1.0, -std::numbers::pi, 0.0};
}

NormalizedCurve load_curve(const CurveArgs& a) {
    if (a.curve.empty() == a.builtin.empty()) throw UsageError("give exactly one of --curve or --builtin");
    RawCurve raw;
    if (!a.builtin.empty()) {
        if (!a.domain.empty()) throw UsageError("--domain does not apply to built-in curves");
        raw = to_raw(builtin_spec(a.builtin));
        if (a.lipschitz) raw.lipschitz = *a.lipschitz;
    } else if (fs::is_directory(a.curve)) {
        if (!a.domain.empty()) throw UsageError("--domain does not apply to bundles");
        auto poly = std::make_shared<const Polyline>(read_bundle(a.curve).curve);
        raw = {[poly](double t) { return poly->at(t); }, poly->domain(), a.lipschitz.value_or(1.0)};
    } else {
        const PolylineFile file = read_polyline_file(a.curve);
        if (!a.lipschitz) throw UsageError("--lipschitz is required for a polyline file");
        std::shared_ptr<const Polyline> poly;
        try {
            poly = std::make_shared<const Polyline>(file.polyline());
        } catch (const std::invalid_argument& e) {
            throw ParseError(a.curve + ": " + e.what());
        }
        if (!file.knots.empty()) {
            if (!a.domain.empty()) throw UsageError("--domain conflicts with a knotted polyline file");
            raw = {[poly](double t) { return poly->at(t); }, poly->domain(), *a.lipschitz};
        } else {
            Domain d{0.0, 1.0};
            if (!a.domain.empty()) {
                const auto v = parse_numbers(a.domain, "domain");
                if (v.size() != 2) throw UsageError("--domain expects 'a,b'");
                d = {v[0], v[1]};
            }
            const double len = poly->length();
            raw = {[poly, d, len](double t) { return poly->at(std::min(len, len * (t - d.lo) / d.width())); }, d,
                   *a.lipschitz};
        }
    }
    const Point probe = raw.eval(raw.domain.lo);
    Point q = Point::zero(probe.dim());
    if (!a.query_point.empty()) q = Point(parse_numbers(a.query_point, "query point"));
    NormalizedCurve nc = normalize(raw, q);
    const LipschitzReport lr = verify_lipschitz(nc.curve, 2000, 1);
    if (lr.violated)
        std::cerr << "warning: declared Lipschitz bound looks too small (observed ratio "
                  << format_number(lr.max_ratio) << ")\n";
    return nc;
}

// ---------------------------------------------------------------------------
// query

struct QueryArgs {
    CurveArgs curve;
    std::string kind = "nearest";
    std::string error = "abs";
    double epsilon = 0.0;
    std::string trace;
    std::string proofset;
    bool normalized = false;
    std::optional<std::size_t> budget;
};

void print_result(const SolveResult& r, const BackMap& bm, bool normalized) {
    auto param = [&](double t) { return normalized ? t : bm.parameter(t); };
    auto dist = [&](double d) { return normalized ? d : bm.distance(d); };
    std::cout << "x_star=" << format_number(param(r.x_star)) << '\n'
              << "point=" << format_point(normalized ? r.point : bm.point(r.point)) << '\n'
              << "distance=" << format_number(dist(r.distance)) << '\n'
              << "certified_lower=" << format_number(dist(r.certified_lower)) << '\n'
              << "certified_upper=" << format_number(dist(r.certified_upper)) << '\n'
              << "samples_used=" << r.samples_used << '\n';
}

int cmd_query(const QueryArgs& a) {
    const NormalizedCurve nc = load_curve(a.curve);
    Query q{parse_kind(a.kind), parse_error_mode(a.error), a.epsilon};
    q.validate();
    SolveOptions opt;
    opt.budget = a.budget;
    InstrumentedCurve ic(nc.curve);
    auto write_outputs = [&](const SolveResult& r) {
        if (!a.trace.empty()) {
            std::ofstream out(a.trace);
            if (!out) throw UsageError("cannot write trace file '" + a.trace + "'");
            write_trace(out, r.trace);
        }
    };
    try {
        const SolveResult r = solve(ic, q, opt);
        print_result(r, nc.back_map, a.normalized);
        write_outputs(r);
        if (!a.proofset.empty()) {
            std::ofstream out(a.proofset);
            if (!out) throw UsageError("cannot write proof-set file '" + a.proofset + "'");
            write_proofset(out, r.proof_set(q));
        }
        return kOk;
    } catch (const BudgetExceeded& e) {
        std::cout << "status=budget-exceeded\n";
        print_result(e.partial(), nc.back_map, a.normalized);
        write_outputs(e.partial());
        std::cerr << "error: " << e.what() << '\n';
        return kBudget;
    }
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    CurveArgs curve;
    std::string proofset;
    std::string kind;
    std::string error;
    std::optional<double> epsilon;
};

int cmd_verify(const VerifyArgs& a) {
    const NormalizedCurve nc = load_curve(a.curve);
    std::ifstream in(a.proofset);
    if (!in) throw ParseError("cannot open proof-set file '" + a.proofset + "'");
    ProofSetFile f = parse_proofset_rows(in, a.proofset);
    Query q;
    if (f.mode) q = *f.mode;
    if (!f.mode && (a.kind.empty() || a.error.empty() || !a.epsilon))
        throw ParseError(a.proofset + ": no proofset header; pass --kind, --error and --epsilon");
    if (!a.kind.empty()) q.kind = parse_kind(a.kind);
    if (!a.error.empty()) q.error = parse_error_mode(a.error);
    if (a.epsilon) q.epsilon = *a.epsilon;
    q.validate();

    ProofSet ps;
    try {
        ps = make_proofset(f.params, f.points, q);
    } catch (const std::invalid_argument& e) {
        throw ParseError(a.proofset + ": " + e.what());
    }
    if (ps.points.front().dim() != nc.curve.dim()) throw ParseError(a.proofset + ": dimension differs from the curve");
    for (std::size_t i = 0; i < ps.params.size(); ++i) {
        const Point actual = nc.curve(ps.params[i]);
        if (distance(actual, ps.points[i]) > 1e-9 * std::max(1.0, actual.norm())) {
            std::cout << "fail\nreason=point at parameter " << format_number(ps.params[i])
                      << " does not match the curve\n";
            return kVerifyFail;
        }
    }
    const ProofVerdict v = check(ps);
    std::cout << (v.pass ? "pass" : "fail") << '\n'
              << "margin=" << format_number(v.margin) << '\n'
              << "lower=" << format_number(v.lower()) << '\n'
              << "upper=" << format_number(v.upper()) << '\n'
              << "samples=" << ps.params.size() << '\n';
    return v.pass ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    std::string family;
    std::size_t k = 1;
    double epsilon = 0.0;
    std::size_t down = 1;
    std::optional<std::uint64_t> seed;
    std::size_t slot = 1;
    std::string kind = "nearest";
    std::optional<double> spike_ratio;
    std::string point = "0,1";
    std::size_t vertices = 8;
    std::size_t dim = 2;
    double clearance = 0.5;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    const std::uint64_t seed = a.seed ? *a.seed : default_seed();
    InstanceBundle b = [&] {
        if (a.family == "spike") return spike_family(a.k, a.epsilon, a.down, seed);
        if (a.family == "hidden-spike") return hidden_spike_instance(a.epsilon, a.slot);
        if (a.family == "rel-segments")
            return relative_segment_family(a.k, a.epsilon, a.down, seed, parse_kind(a.kind), a.spike_ratio);
        if (a.family == "constant") return constant_instance(Point(parse_numbers(a.point, "point")), a.epsilon);
        InstanceBundle r = random_polyline(a.vertices, a.dim, seed, a.clearance);
        r.epsilon = r.metadata.epsilon = a.epsilon;
        return r;
    }();
    if (!a.out.empty()) write_bundle(a.out, b);
    write_metadata(std::cout, b.metadata);
    return kOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
    std::string families = "spike";
    std::string epsilons = "1/24";
    std::string ks = "2";
    std::string seeds;
    std::string out;
    std::string summary;
    std::size_t jobs = 1;
    bool timing = false;
};

bool family_uses_k(const std::string& f) { return f == "spike" || f == "rel-segments"; }

int cmd_bench(const BenchArgs& a) {
    std::vector<std::string> families;
    for (auto f : text::split(a.families, ',')) families.emplace_back(f);
    const auto eps = parse_numbers(a.epsilons, "epsilon list");
    std::vector<std::uint64_t> seeds;
    if (a.seeds.empty()) {
        seeds.push_back(default_seed());
    } else {
        for (double s : parse_numbers(a.seeds, "seed list")) seeds.push_back(static_cast<std::uint64_t>(s));
    }
    std::vector<std::size_t> ks;
    for (double k : parse_numbers(a.ks, "k list")) ks.push_back(static_cast<std::size_t>(k));
    if (families.empty() || eps.empty() || ks.empty() || seeds.empty()) throw UsageError("parameter grids must be non-empty");

    std::vector<BenchCell> cells;
    for (const auto& f : families) {
        const std::vector<std::size_t> cell_ks = family_uses_k(f) ? ks : std::vector<std::size_t>{1};
        for (auto k : cell_ks)
            for (double e : eps)
                for (auto s : seeds) {
                    BenchCell c{f, k, e, s};
                    try {
                        (void)bench_instance(c);
                        (void)bench_query(c).validate();
                    } catch (const std::invalid_argument& ex) {
                        std::cerr << "skipping " << f << " k=" << k << " epsilon=" << format_number(e) << ": "
                                  << ex.what() << '\n';
                        continue;
                    }
                    cells.push_back(c);
                }
    }
    const auto records = run_bench(cells, {a.jobs, a.timing});
    if (a.out.empty() || a.out == "-") {
        write_bench_csv(std::cout, records);
    } else {
        std::ofstream out(a.out);
        if (!out) throw UsageError("cannot write '" + a.out + "'");
        write_bench_csv(out, records);
    }
    if (!a.summary.empty()) {
        std::ofstream out(a.summary);
        if (!out) throw UsageError("cannot write '" + a.summary + "'");
        write_gnuplot_summary(out, records);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive nearest/farthest point queries on Lipschitz curves"};
    app.require_subcommand(1);

    QueryArgs qa;
    auto* query = app.add_subcommand("query", "Solve a nearest/farthest point query");
    add_curve_options(query, qa.curve);
    query->add_option("--kind", qa.kind)->check(CLI::IsMember({"nearest", "farthest"}));
    query->add_option("--error", qa.error)->check(CLI::IsMember({"abs", "rel", "absolute", "relative"}));
    query->add_option("--epsilon", qa.epsilon)->required();
    query->add_option("--trace", qa.trace, "Write the run trace (normalized units)");
    query->add_option("--proofset", qa.proofset, "Write the certificate (normalized units)");
    query->add_option("--budget", qa.budget, "Sample budget (default 10*ceil(1/eps)+64)");
    query->add_flag("--normalized", qa.normalized, "Report normalized instead of raw units");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check a proof-set certificate against a curve");
    add_curve_options(verify, va.curve);
    verify->add_option("--proofset", va.proofset)->required();
    verify->add_option("--kind", va.kind)->check(CLI::IsMember({"nearest", "farthest"}));
    verify->add_option("--error", va.error)->check(CLI::IsMember({"abs", "rel", "absolute", "relative"}));
    verify->add_option("--epsilon", va.epsilon);

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "Generate an instance bundle");
    gen->add_option("family", ga.family)
        ->required()
        ->check(CLI::IsMember({"spike", "hidden-spike", "rel-segments", "constant", "random"}));
    gen->add_option("--k", ga.k);
    gen->add_option("--epsilon", ga.epsilon)->required();
    gen->add_option("--down", ga.down, "1-based index of the distinguished spike");
    gen->add_option("--seed", ga.seed);
    gen->add_option("--slot", ga.slot);
    gen->add_option("--kind", ga.kind)->check(CLI::IsMember({"nearest", "farthest"}));
    gen->add_option("--spike-ratio", ga.spike_ratio);
    gen->add_option("--point", ga.point);
    gen->add_option("--vertices", ga.vertices);
    gen->add_option("--dim", ga.dim);
    gen->add_option("--clearance", ga.clearance);
    gen->add_option("--out", ga.out, "Bundle directory (default: print metadata only)");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Adaptive solver vs uniform baseline vs grid OPT");
    bench->add_option("--families", ba.families, "spike,constant,segment,hidden-spike,rel-segments,random");
    bench->add_option("--epsilons", ba.epsilons, "Comma list; fractions like 1/24 allowed");
    bench->add_option("--ks", ba.ks);
    bench->add_option("--seeds", ba.seeds, "Comma list (default: LP_SEED or 0)");
    bench->add_option("--out", ba.out, "CSV output (default stdout)");
    bench->add_option("--summary", ba.summary, "gnuplot-compatible worst-ratio summary");
    bench->add_option("--jobs", ba.jobs)->check(CLI::PositiveNumber);
    bench->add_flag("--timing", ba.timing, "Record wall time in the millis column");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*query) return cmd_query(qa);
        if (*verify) return cmd_verify(va);
        if (*gen) return cmd_gen(ga);
        return cmd_bench(ba);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kMalformed;
    } catch (const OracleCapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMalformed;
    }
}
