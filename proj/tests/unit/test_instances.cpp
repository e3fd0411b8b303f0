#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "lipcurve/lipcurve.hpp"
#include "oracles.hpp"

using namespace lipcurve;

namespace {

void expect_canonical(const InstanceBundle& b) {
    EXPECT_EQ(b.curve.domain().lo, 0.0);
    EXPECT_EQ(b.curve.domain().hi, 1.0);
    EXPECT_LE(b.curve.max_speed(), 1.0 + 1e-9);
    const LipschitzReport r = verify_lipschitz(b.canonical(), 2000, 17);
    EXPECT_FALSE(r.violated);
    EXPECT_LE(r.max_ratio, 1.0 + 1e-9);
}

}  // namespace

TEST(ConstantInstance, Metadata) {
    const InstanceBundle b = constant_instance({0.0, 1.0}, 0.1);
    EXPECT_EQ(*b.metadata.d_min, 1.0);
    EXPECT_EQ(*b.metadata.d_max, 1.0);
    EXPECT_EQ(*b.metadata.opt_upper_bound, 6u);
    EXPECT_EQ(b.canonical()(0.37), (Point{0.0, 1.0}));
    EXPECT_THROW(constant_instance({0.0, 0.1}, 0.1), std::invalid_argument);
    EXPECT_EQ(*constant_instance({0.6, 0.8}, 0.1).metadata.opt_upper_bound, 6u);
}

TEST(SpikeFamily, ExampleMetadata) {
    const InstanceBundle b = spike_family(4, 1.0 / 24.0, 2, 7);
    EXPECT_NEAR(*b.metadata.d_min, 1.0 - 1.0 / 16.0, 1e-12);
    EXPECT_EQ(*b.metadata.opt_upper_bound, 14u);
    EXPECT_EQ(b.metadata.spike_parameters.size(), 4u);
    expect_canonical(b);
    // The minimum is attained only at the down spike tip.
    const double tip = std::stod(b.metadata.extra.at("down_parameter"));
    EXPECT_NEAR(b.curve.at(tip).norm(), *b.metadata.d_min, 1e-12);
    const DistanceRange r = distance_range(b.curve, {0.0, 0.0});
    EXPECT_NEAR(r.argmin_parameter, tip, 1e-12);
}

TEST(SpikeFamily, AllCellsAreCanonical) {
    for (std::size_t k : {1u, 2u, 4u, 8u})
        for (double eps : {1.0 / 24.0, 1.0 / 96.0})
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const InstanceBundle b = spike_family(k, eps, 1 + seed % k, seed);
                expect_canonical(b);
                const oracle::RangeOracle o = oracle::vertex_range(b.curve.vertices());
                EXPECT_NEAR(*b.metadata.d_min, o.min, 1e-9);
                const double h = std::stod(b.metadata.extra.at("spike_height"));
                EXPECT_GT(h, eps);
            }
    EXPECT_THROW(spike_family(16, 1.0 / 24.0, 1, 0), std::invalid_argument);
    EXPECT_THROW(spike_family(4, 1.0 / 24.0, 5, 0), std::invalid_argument);
}

TEST(SpikeFamily, SingleGroupSearch) {
    const InstanceBundle b = spike_family(1, 1.0 / 96.0, 1, 3);
    const SolveResult r = solve(b.canonical(), nearest_abs(1.0 / 96.0));
    EXPECT_LE(r.distance, *b.metadata.d_min + 1.0 / 96.0 + 1e-12);
}

TEST(HiddenSpike, SlotThree) {
    const InstanceBundle b = hidden_spike_instance(0.05, 3);
    const Point tip = b.curve.at(0.5);
    EXPECT_NEAR(tip[0], 0.0, 1e-15);
    EXPECT_NEAR(tip[1], 0.025, 1e-15);
    EXPECT_NEAR(*b.metadata.d_min, 0.025, 1e-15);
    EXPECT_EQ(*b.metadata.opt_upper_bound, 1u);
    ASSERT_EQ(b.metadata.spike_parameters.size(), 1u);
    EXPECT_NEAR(b.metadata.spike_parameters[0], 0.5, 1e-15);
    expect_canonical(b);
}

TEST(HiddenSpike, FlatOutsideItsInterval) {
    const double eps = 0.05;
    for (std::size_t slot = 1; slot <= hidden_spike_slots(eps); ++slot) {
        const InstanceBundle b = hidden_spike_instance(eps, slot);
        const double x1 = 4.0 * eps * static_cast<double>(slot - 1);
        for (int i = 0; i <= 1000; ++i) {
            const double t = i / 1000.0;
            if (t > x1 && t < x1 + 4.0 * eps) continue;
            const Point p = b.curve.at(t);
            EXPECT_NEAR(p[0], 0.0, 1e-15);
            EXPECT_NEAR(p[1], 2.5 * eps, 1e-12) << slot << ' ' << t;
        }
    }
}

TEST(HiddenSpike, PaddedLastSlot) {
    const double eps = 0.06;  // 1/(4 eps) = 4.17
    EXPECT_EQ(hidden_spike_slots(eps), 4u);
    const InstanceBundle b = hidden_spike_instance(eps, 4);
    EXPECT_NEAR(*b.metadata.d_min, eps / 2.0, 1e-15);
    EXPECT_NEAR(b.curve.at(1.0)[1], 2.5 * eps, 1e-12);
    expect_canonical(b);
    EXPECT_THROW(hidden_spike_instance(0.2, 1), std::invalid_argument);
    EXPECT_THROW(hidden_spike_instance(0.05, 6), std::invalid_argument);
}

TEST(RelativeSegments, NearestGeometry) {
    const InstanceBundle b = relative_segment_family(1, 0.25, 1, 0);
    const double L = std::stod(b.metadata.extra.at("L"));
    const double S = std::stod(b.metadata.extra.at("S"));
    const double D = std::stod(b.metadata.extra.at("D"));
    EXPECT_NEAR(S / L, 0.5, 1e-12);
    EXPECT_NEAR(D / L, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(relative_spike_threshold(0.25, Kind::nearest), 0.3, 1e-12);
    EXPECT_EQ(*b.metadata.opt_upper_bound, 5u);
    expect_canonical(b);
}

TEST(RelativeSegments, FarthestSpikeScaling) {
    const InstanceBundle b = relative_segment_family(2, 0.25, 1, 0, Kind::farthest);
    const double L = std::stod(b.metadata.extra.at("L"));
    const double S = std::stod(b.metadata.extra.at("S"));
    EXPECT_NEAR(S, 1.25 * L * 0.5, 1e-12);
    expect_canonical(b);
}

TEST(RelativeSegments, OnlyDistinguishedSpikeSolves) {
    for (const Kind kind : {Kind::nearest, Kind::farthest})
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const double eps = 0.25;
            const InstanceBundle b = relative_segment_family(3, eps, 2, seed, kind);
            const double tip = std::stod(b.metadata.extra.at("down_parameter"));
            // Unit speed: the out-and-back spike occupies parameters tip +- S.
            const double S = std::stod(b.metadata.extra.at("S"));
            for (int i = 0; i <= 20000; ++i) {
                const double t = i / 20000.0;
                const double r = b.curve.at(t).norm();
                const bool solves = kind == Kind::nearest ? r <= (1.0 + eps) * *b.metadata.d_min
                                                          : r >= *b.metadata.d_max / (1.0 + eps);
                if (solves) EXPECT_LE(std::abs(t - tip), S + 1e-9) << seed << ' ' << t;
            }
        }
}

TEST(RelativeSegments, RejectsWeakSpikes) {
    try {
        relative_segment_family(2, 0.25, 1, 0, Kind::nearest, 0.2);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("S/L"), std::string::npos);
    }
}

TEST(RandomPolyline, ClearanceAndExactRange) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const InstanceBundle b = random_polyline(8, 2 + seed % 2, seed, 0.5);
        expect_canonical(b);
        EXPECT_NEAR(b.curve.length(), 1.0, 1e-12);
        EXPECT_GE(*b.metadata.d_min, 0.5 - 1e-12);
        const oracle::RangeOracle o = oracle::vertex_range(b.curve.vertices());
        EXPECT_NEAR(*b.metadata.d_min, o.min, 1e-9);
        EXPECT_NEAR(*b.metadata.d_max, o.max, 1e-12);
    }
    const InstanceBundle a = random_polyline(8, 3, 42, 0.5), c = random_polyline(8, 3, 42, 0.5);
    EXPECT_EQ(a.curve.vertices(), c.curve.vertices());
}

TEST(Metadata, SolverBracketContainsTruth) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const InstanceBundle b = spike_family(2, 1.0 / 48.0, 1 + seed % 2, seed);
        const SolveResult r = solve(b.canonical(), nearest_abs(1.0 / 48.0));
        EXPECT_LE(r.certified_lower, *b.metadata.d_min + 1e-12);
        EXPECT_GE(r.certified_upper, *b.metadata.d_min - 1e-12);
    }
}

TEST(Bundle, DirectoryRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "lipcurve_bundle_test";
    std::filesystem::remove_all(dir);
    const InstanceBundle b = spike_family(4, 1.0 / 24.0, 3, 9);
    write_bundle(dir.string(), b);
    const InstanceBundle back = read_bundle(dir.string());
    EXPECT_EQ(back.curve.knots(), b.curve.knots());
    EXPECT_EQ(back.curve.vertices(), b.curve.vertices());
    EXPECT_EQ(back.metadata.family, "spike");
    EXPECT_EQ(*back.metadata.d_min, *b.metadata.d_min);
    EXPECT_EQ(back.metadata.spike_parameters, b.metadata.spike_parameters);
    EXPECT_EQ(back.metadata.extra, b.metadata.extra);
    EXPECT_EQ(back.epsilon, b.epsilon);
    std::filesystem::remove_all(dir);
}

TEST(Bundle, MetadataWithMissingValues) {
    InstanceMetadata m;
    m.family = "random";
    m.epsilon = 0.1;
    std::ostringstream out;
    write_metadata(out, m);
    EXPECT_NE(out.str().find("d_min=NA"), std::string::npos);
    std::istringstream in(out.str());
    const InstanceMetadata back = parse_metadata(in);
    EXPECT_FALSE(back.d_min.has_value());
    std::istringstream bad("epsilon=0.1\n");
    EXPECT_THROW(parse_metadata(bad), ParseError);
}

TEST(Thinning, CornersFormProofSet) {
    const InstanceBundle b = spike_family(2, 1.0 / 24.0, 1, 5);
    const Query q = nearest_abs(1.0 / 24.0);
    const auto params = thinned_corner_proofset(b, q);
    EXPECT_TRUE(check(sample_proofset(b.canonical(), params, q)).pass);
    EXPECT_LE(params.size(), b.curve.knots().size());
}
