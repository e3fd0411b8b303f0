#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "configs.hpp"
#include "lipcurve/lipcurve.hpp"
#include "oracles.hpp"

using namespace lipcurve;

namespace {

struct Tally {
    int pass = 0, fail = 0, vacuous = 0;

    void add(Verdict v) {
        if (v == Verdict::pass) ++pass;
        if (v == Verdict::fail) ++fail;
        if (v == Verdict::vacuous) ++vacuous;
    }
};

constexpr int kTrials = 2000;

}  // namespace

TEST(EllipseLemma, RandomConfigurationsHold) {
    std::mt19937_64 rng(1);
    Tally t;
    for (int i = 0; i < kTrials; ++i) {
        const auto c = configs::ellipse_lemma_draw(rng);
        if (!(c.a > 0.0 && c.a < c.d)) continue;
        t.add(check_ellipse_lemma(c.s, c.d, c.a).verdict);
    }
    EXPECT_EQ(t.fail, 0);
    EXPECT_GT(t.pass, kTrials / 10);
}

TEST(EllipseLemma, VacuousWhenMiddleSampleTooClose) {
    FourSamples s{{0.0, 0.1, 0.2, 0.3}, {Point{0.0, 1.0}, Point{0.0, 1.05}, Point{0.0, 1.1}, Point{0.0, 1.0}}};
    const LemmaCheck c = check_ellipse_lemma(s, 1.0, 0.2);
    EXPECT_EQ(c.verdict, Verdict::vacuous);
}

TEST(EllipseLemma, CollinearOneDimensionalCaseAgainstBruteForce) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        FourSamples s;
        configs::random_walk(rng, 1, 1.0, s.params, s.points);
        const auto& x = s.params;
        const auto& p = s.points;
        const double c12 = oracle::interval_extrema_1d(p[0][0], p[1][0], x[1] - x[0], 20000).min;
        const double c34 = oracle::interval_extrema_1d(p[2][0], p[3][0], x[3] - x[2], 20000).min;
        const double d = std::max(c12, c34) + 1e-4;
        const double a = std::min(p[1].norm() - d, d) * u(rng);
        if (!(a > 0.0 && a < d)) continue;
        const LemmaCheck c = check_ellipse_lemma(s, d, a);
        if (c.verdict == Verdict::vacuous) continue;
        EXPECT_EQ(c.verdict, Verdict::pass);
        const double brute = oracle::interval_extrema_1d(p[0][0], p[3][0], x[3] - x[0], 20000).min;
        EXPECT_LE(brute, d - a + 1e-4);
        ++checked;
    }
    EXPECT_GT(checked, 20);
}

TEST(Corollaries, RandomConfigurationsHold) {
    std::mt19937_64 rng(2);
    Tally t1, t2, t3;
    for (int i = 0; i < kTrials; ++i) {
        const auto c1 = configs::corollary1_draw(rng);
        if (c1.eps > 0.0 && c1.eps < c1.d) t1.add(check_ellipse_corollary1(c1.s, c1.d, c1.eps).verdict);
        const auto c2 = configs::corollary2_draw(rng);
        if (c2.a > 0.0 && c2.a / 2.0 < c2.d) t2.add(check_ellipse_corollary2(c2.s, c2.d, c2.a).verdict);
        const auto c3 = configs::corollary3_draw(rng);
        if (c3.eps > 0.0 && c3.eps / 2.0 < c3.d) t3.add(check_ellipse_corollary3(c3.s, c3.d, c3.eps).verdict);
    }
    EXPECT_EQ(t1.fail, 0);
    EXPECT_EQ(t2.fail, 0);
    EXPECT_EQ(t3.fail, 0);
    EXPECT_GT(t1.pass, kTrials / 10);
    EXPECT_GT(t2.pass, kTrials / 10);
    EXPECT_GT(t3.pass, kTrials / 10);
}

TEST(InvertedEllipseLemma, RandomConfigurationsHold) {
    std::mt19937_64 rng(3);
    Tally t;
    for (int i = 0; i < kTrials; ++i) {
        const auto c = configs::inverted_draw(rng);
        if (!(c.a > 0.0 && c.a < c.d)) continue;
        t.add(check_inverted_ellipse_lemma(c.s, c.d, c.a).verdict);
    }
    EXPECT_EQ(t.fail, 0);
    EXPECT_GT(t.pass, kTrials / 10);
}

TEST(InvertedEllipseLemma, SymmetricConfigurationsHoldWithSlack) {
    std::mt19937_64 rng(4);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        const auto c = configs::symmetric_inverted_draw(rng);
        if (!(c.a > 0.0 && c.a < c.d)) continue;
        const LemmaCheck r = check_inverted_ellipse_lemma(c.s, c.d, c.a);
        if (r.verdict == Verdict::vacuous) continue;
        EXPECT_EQ(r.verdict, Verdict::pass);
        EXPECT_GT(r.value, r.bound);
        ++checked;
    }
    EXPECT_GT(checked, 50);
}

TEST(InvertedEllipseLemma, WedgeConfigurationsHold) {
    std::mt19937_64 rng(6);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto c = configs::wedge_inverted_draw(rng);
        if (!(c.a > 0.0 && c.a < c.d)) continue;
        const LemmaCheck r = check_inverted_ellipse_lemma(c.s, c.d, c.a);
        if (r.verdict == Verdict::vacuous) continue;
        EXPECT_EQ(r.verdict, Verdict::pass) << r.value << ' ' << r.bound;
        ++checked;
    }
    EXPECT_GT(checked, 1000);
}

TEST(InvertedEllipseLemma, NaiveMarginHasCounterexamples) {
    std::mt19937_64 rng(5);
    int violations = 0;
    for (int i = 0; i < 2000 && violations == 0; ++i) {
        const auto c = i % 2 ? configs::wedge_inverted_draw(rng) : configs::inverted_draw(rng);
        if (!(c.a > 0.0 && c.a < c.d)) continue;
        if (check_inverted_ellipse_lemma(c.s, c.d, c.a, 1.0).verdict == Verdict::fail) ++violations;
    }
    EXPECT_GE(violations, 1);
}

TEST(LemmaSamples, ValidateRejectsInconsistentSamples) {
    FourSamples bad{{0.0, 0.1, 0.2, 0.3}, {Point{0.0}, Point{0.5}, Point{0.5}, Point{0.5}}};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    FourSamples unordered{{0.0, 0.3, 0.2, 0.4}, {Point{0.0}, Point{0.0}, Point{0.0}, Point{0.0}}};
    EXPECT_THROW(unordered.validate(), std::invalid_argument);
}

TEST(FarEllipse, ZeroAngle) {
    const LemmaCheck c = check_farellipse_proposition(0.3, 0.0);
    EXPECT_NEAR(c.value, 0.6, 1e-15);
    EXPECT_NEAR(c.bound, 0.48, 1e-15);
    EXPECT_EQ(c.verdict, Verdict::pass);
}

TEST(FarEllipse, GridHolds) {
    for (int i = 1; i <= 100; ++i)
        for (int j = 1; j < 100; ++j) {
            const double a = i / 100.0, angle = M_PI * j / 100.0;
            EXPECT_EQ(check_farellipse_proposition(a, angle).verdict, Verdict::pass) << a << ' ' << angle;
        }
}

TEST(FarEllipse, MinimizingCosineResidual) {
    for (double a : {0.01, 0.1, 0.25, 0.5, 1.0}) {
        const double c = (5.0 + 5.0 * a) / (5.0 + 8.0 * a);
        EXPECT_NEAR(farellipse_residual(a, c), 288.0 * a * a * a / (25.0 * (5.0 + 8.0 * a)), 1e-10);
        EXPECT_GE(farellipse_residual(a, c), 0.0);
    }
}
