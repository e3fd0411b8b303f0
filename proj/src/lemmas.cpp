#include "lipcurve/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lipcurve/ellipse.hpp"

namespace lipcurve {

namespace {

constexpr double kConsistencySlack = 1e-12;

template <std::size_t N>
void validate_samples(const std::array<double, N>& params, const std::array<Point, N>& points) {
    for (std::size_t i = 0; i < N; ++i) {
        if (!(params[i] >= 0.0 && params[i] <= 1.0))
            throw std::invalid_argument("lemma sample parameter outside [0,1]");
        if (points[i].dim() != points[0].dim() || points[i].dim() == 0)
            throw std::invalid_argument("lemma sample points disagree in dimension");
        if (i == 0) continue;
        if (params[i] < params[i - 1]) throw std::invalid_argument("lemma sample parameters must be ordered");
        if (distance(points[i], points[i - 1]) > params[i] - params[i - 1] + kConsistencySlack)
            throw std::invalid_argument("lemma samples are not Lipschitz-consistent");
    }
}

double cp(const Point& p, const Point& q, double s) { return closest_possible({p, q, s}); }
double fp(const Point& p, const Point& q, double s) { return farthest_possible({p, q, s}); }

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::vacuous: return "vacuous";
    }
    return "?";
}

void FourSamples::validate() const { validate_samples(params, points); }
void SplitSamples::validate() const { validate_samples(params, points); }

LemmaCheck check_ellipse_lemma(const FourSamples& s, double d, double a) {
    s.validate();
    if (!(a > 0.0 && a < d)) throw std::invalid_argument("ellipse lemma requires 0 < a < d");
    const auto& x = s.params;
    const auto& p = s.points;
    LemmaCheck out;
    out.bound = d - a;
    const bool hypotheses = cp(p[0], p[1], x[1] - x[0]) <= d && cp(p[2], p[3], x[3] - x[2]) <= d &&
                            p[1].norm() >= d + a;
    if (!hypotheses) return out;
    out.value = cp(p[0], p[3], x[3] - x[0]);
    out.verdict = out.value <= out.bound + kLemmaTolerance ? Verdict::pass : Verdict::fail;
    return out;
}

LemmaCheck check_ellipse_corollary1(const SplitSamples& s, double d, double eps) {
    s.validate();
    if (!(eps > 0.0 && eps < d)) throw std::invalid_argument("corollary 1 requires 0 < eps < d");
    const auto& x = s.params;
    const auto& p = s.points;
    LemmaCheck out;
    out.bound = d - eps / 2.0;
    if (!(cp(p[0], p[2], x[2] - x[0]) >= d - eps && p[1].norm() >= d)) return out;
    out.value = std::max(cp(p[0], p[1], x[1] - x[0]), cp(p[1], p[2], x[2] - x[1]));
    out.verdict = out.value >= out.bound - kLemmaTolerance ? Verdict::pass : Verdict::fail;
    return out;
}

LemmaCheck check_ellipse_corollary2(const FourSamples& s, double d, double eps) {
    s.validate();
    if (!(eps > 0.0 && eps / 2.0 < d)) throw std::invalid_argument("corollary 2 requires 0 < eps/2 < d");
    const auto& x = s.params;
    const auto& p = s.points;
    LemmaCheck out;
    out.bound = d - eps / 2.0;
    const bool hypotheses = cp(p[0], p[1], x[1] - x[0]) <= d && cp(p[2], p[3], x[3] - x[2]) <= d &&
                            p[1].norm() > d + eps / 2.0;
    if (!hypotheses) return out;
    out.value = cp(p[0], p[3], x[3] - x[0]);
    out.verdict = out.value < out.bound + kLemmaTolerance ? Verdict::pass : Verdict::fail;
    return out;
}

LemmaCheck check_ellipse_corollary3(const SplitSamples& s, double d, double eps) {
    s.validate();
    if (!(eps > 0.0 && eps / 2.0 < d)) throw std::invalid_argument("corollary 3 requires 0 < eps/2 < d");
    const auto& x = s.params;
    const auto& p = s.points;
    LemmaCheck out;
    out.bound = d;
    if (!(cp(p[0], p[2], x[2] - x[0]) >= d - eps / 2.0 && p[1].norm() > d + eps / 2.0)) return out;
    out.value = std::max(cp(p[0], p[1], x[1] - x[0]), cp(p[1], p[2], x[2] - x[1]));
    out.verdict = out.value > out.bound - kLemmaTolerance ? Verdict::pass : Verdict::fail;
    return out;
}

LemmaCheck check_inverted_ellipse_lemma(const FourSamples& s, double d, double a, double margin_factor) {
    s.validate();
    if (!(a > 0.0 && a < d)) throw std::invalid_argument("inverted ellipse lemma requires 0 < a < d");
    const auto& x = s.params;
    const auto& p = s.points;
    LemmaCheck out;
    out.bound = d + margin_factor * a;
    bool hypotheses = fp(p[0], p[1], x[1] - x[0]) >= d && fp(p[2], p[3], x[3] - x[2]) >= d;
    for (const auto& q : p) hypotheses = hypotheses && q.norm() <= d - a;
    if (!hypotheses) return out;
    out.value = fp(p[0], p[3], x[3] - x[0]);
    out.verdict = out.value >= out.bound - kLemmaTolerance ? Verdict::pass : Verdict::fail;
    return out;
}

LemmaCheck check_farellipse_proposition(double a, double angle) {
    if (!(a > 0.0)) throw std::invalid_argument("farellipse proposition requires a > 0");
    const double half = angle / 2.0;
    const Point A{std::cos(-half), std::sin(-half)};
    const Point B{std::cos(half), std::sin(half)};
    const Point Q{1.0 + a, 0.0};
    const Point P = B * (1.0 + 8.0 * a / 5.0);
    LemmaCheck out;
    out.value = distance(A, Q) + distance(Q, B);
    out.bound = distance(A, P);
    out.verdict = out.value >= out.bound - 1e-12 ? Verdict::pass : Verdict::fail;
    return out;
}

double farellipse_residual(double a, double cosine) {
    const double half = std::acos(std::clamp(cosine, -1.0, 1.0));
    const Point A{std::cos(-half), std::sin(-half)};
    const Point B{std::cos(half), std::sin(half)};
    const Point Q{1.0 + a, 0.0};
    const Point P = B * (1.0 + 8.0 * a / 5.0);
    return 4.0 * (A - Q).squared_norm() - (A - P).squared_norm();
}

}  // namespace lipcurve
