#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lipcurve/instances.hpp"
#include "lipcurve/query.hpp"

namespace lipcurve {

/// Families: spike, constant, segment, hidden-spike, rel-segments, random.
struct BenchCell {
    std::string family;
    std::size_t k = 1;
    double epsilon = 0.1;
    std::uint64_t seed = 0;
};

struct BenchRecord {
    BenchCell cell;
    std::size_t samples = 0;
    std::size_t baseline_samples = 0;
    std::optional<std::size_t> opt_est;
    /// samples / (opt * log2(2 + 1/(eps opt))).
    std::optional<double> ratio;
    double millis = 0.0;
};

struct BenchOptions {
    std::size_t jobs = 1;
    /// Wall time is recorded only when set, so default CSV output is
    /// byte-identical across runs.
    bool timing = false;
    std::size_t oracle_cap = 512;
};

/// Instance and query of a cell. Seeds choose spike positions; the down spike
/// (spike/rel-segments) is 1 + seed mod k and the hidden-spike slot is
/// 1 + seed mod slots.
InstanceBundle bench_instance(const BenchCell& cell);
Query bench_query(const BenchCell& cell);

double adaptive_ratio(std::size_t samples, std::size_t opt, double eps);

BenchRecord run_cell(const BenchCell& cell, const BenchOptions& options = {});
/// Runs cells on up to options.jobs threads; output order equals input order.
std::vector<BenchRecord> run_bench(const std::vector<BenchCell>& cells, const BenchOptions& options = {});

inline constexpr const char* kBenchHeader = "family,k,epsilon,seed,samples,baseline_samples,opt_est,ratio,millis";
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// Per (family, k, epsilon): the worst ratio over seeds, one block per
/// (family, k) separated by blank lines.
void write_gnuplot_summary(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace lipcurve
