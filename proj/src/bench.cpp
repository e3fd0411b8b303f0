#include "lipcurve/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "lipcurve/errors.hpp"
#include "lipcurve/proofset.hpp"
#include "lipcurve/solver.hpp"
#include "lipcurve/text.hpp"

namespace lipcurve {

using text::format_number;

InstanceBundle bench_instance(const BenchCell& c) {
    const std::size_t k = std::max<std::size_t>(c.k, 1);
    if (c.family == "spike") return spike_family(k, c.epsilon, 1 + c.seed % k, c.seed);
    if (c.family == "constant") return constant_instance({0.0, 1.0}, c.epsilon);
    if (c.family == "segment") {
        InstanceBundle b{Polyline::with_knots({0.0, 1.0}, {{-0.5, 0.3}, {0.5, 0.3}}), c.epsilon, {}};
        b.metadata.family = "segment";
        b.metadata.epsilon = c.epsilon;
        b.metadata.d_min = 0.3;
        b.metadata.d_max = std::hypot(0.5, 0.3);
        b.metadata.opt_upper_bound = 3;
        return b;
    }
    if (c.family == "hidden-spike") return hidden_spike_instance(c.epsilon, 1 + c.seed % hidden_spike_slots(c.epsilon));
    if (c.family == "rel-segments") return relative_segment_family(k, c.epsilon, 1 + c.seed % k, c.seed);
    if (c.family == "random") {
        InstanceBundle b = random_polyline(8, 2, c.seed, 0.5);
        b.epsilon = b.metadata.epsilon = c.epsilon;
        return b;
    }
    throw std::invalid_argument("unknown bench family '" + c.family + "'");
}

Query bench_query(const BenchCell& c) {
    return c.family == "rel-segments" ? nearest_rel(c.epsilon) : nearest_abs(c.epsilon);
}

double adaptive_ratio(std::size_t samples, std::size_t opt, double eps) {
    const double o = static_cast<double>(opt);
    return static_cast<double>(samples) / (o * std::log2(2.0 + 1.0 / (eps * o)));
}

BenchRecord run_cell(const BenchCell& cell, const BenchOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const InstanceBundle b = bench_instance(cell);
    const Curve c = b.canonical();
    const Query q = bench_query(cell);
    BenchRecord r;
    r.cell = cell;
    r.samples = solve(c, q, SolveOptions{.budget = std::nullopt, .record_trace = false}).samples_used;
    r.baseline_samples = uniform_baseline(c, nearest_abs(cell.epsilon)).samples_used;
    try {
        r.opt_est = min_proofset_grid(c, q, q.epsilon / 8.0, options.oracle_cap).value;
        r.ratio = adaptive_ratio(r.samples, *r.opt_est, cell.epsilon);
    } catch (const OracleCapExceeded&) {
    }
    if (options.timing)
        r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<BenchRecord> run_bench(const std::vector<BenchCell>& cells, const BenchOptions& options) {
    std::vector<BenchRecord> out(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            try {
                out[i] = run_cell(cells[i], options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(cells.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << kBenchHeader << '\n';
    for (const auto& r : records) {
        out << r.cell.family << ',' << r.cell.k << ',' << format_number(r.cell.epsilon) << ',' << r.cell.seed << ','
            << r.samples << ',' << r.baseline_samples << ',' << (r.opt_est ? std::to_string(*r.opt_est) : "NA") << ','
            << (r.ratio ? format_number(*r.ratio) : "NA") << ',' << format_number(r.millis) << '\n';
    }
}

void write_gnuplot_summary(std::ostream& out, const std::vector<BenchRecord>& records) {
    // (family, k) -> epsilon -> worst ratio; NA cells are skipped.
    std::map<std::pair<std::string, std::size_t>, std::map<double, double>> worst;
    for (const auto& r : records) {
        if (!r.ratio) continue;
        auto& slot = worst[{r.cell.family, r.cell.k}];
        const auto it = slot.find(r.cell.epsilon);
        if (it == slot.end() || *r.ratio > it->second) slot[r.cell.epsilon] = *r.ratio;
    }
    out << "# family k epsilon inv_epsilon worst_ratio\n";
    bool first = true;
    for (const auto& [key, by_eps] : worst) {
        if (!first) out << "\n\n";
        first = false;
        for (auto it = by_eps.rbegin(); it != by_eps.rend(); ++it)
            out << key.first << ' ' << key.second << ' ' << format_number(it->first) << ' '
                << format_number(1.0 / it->first) << ' ' << format_number(it->second) << '\n';
    }
}

}  // namespace lipcurve
