// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "property_checks.hpp"
#include "quantacurve/asymptotics.hpp"
#include "quantacurve/closed_form.hpp"
#include "quantacurve/oracle.hpp"
#include "quantacurve/parallel.hpp"

using namespace quantacurve;
namespace cf = quantacurve::closed_form;
namespace orc = quantacurve::oracle;
namespace asy = quantacurve::asymptotics;
using std::numbers::pi;

namespace {

// Pinned tolerances and limits.
constexpr double kSegmentTol = 1e-5;
constexpr double kSegmentSeconds = 30;
constexpr double kThreeIntervalTol = 1e-4;
constexpr double kThreeIntervalSeconds = 60;
constexpr int kThreeIntervalTuples = 20;
constexpr double kCircleQuadTol = 1e-8;
constexpr double kLloydTol = 1e-5;
constexpr double kRadiusTol = 1e-5;
constexpr int kLloydRestarts = 8;
constexpr double kPolygonTol = 1e-5;
constexpr double kSideChoiceTol = 1e-9;
constexpr int kSampledChoices = 6;  // side choices tried when q > 3
constexpr double kCoefficientTol = 5e-3;
constexpr double kCoefficientSeconds = 10;
constexpr int kGridMin = 100;
constexpr int kGridMax = 10000;
constexpr int kGridPoints = 25;
constexpr double kDimensionTol = 0.02;
constexpr double kIndependenceTol = 1e-2;
constexpr double kPropertySeconds = 120;

struct Outcome {
    bool ok = true;
    std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string num(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body, double limit_s = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = num(secs) + " s";
    if (limit_s > 0) {
        timing += " (limit " + num(limit_s) + " s)";
        if (secs > limit_s) {
            out.ok = false;
        }
    }
    failures += out.ok ? 0 : 1;
    std::printf("%s %d %s: %s; %s\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), out.detail.c_str(), timing.c_str());
    std::fflush(stdout);
}

std::vector<Scenario> in_scope_scenarios() {
    std::vector<Scenario> out;
    for (const SegmentSupport& seg : {SegmentSupport(0, 1), SegmentSupport(2, 5)}) {
        for (EndpointSet set : {EndpointSet::Left, EndpointSet::Right, EndpointSet::Both}) {
            out.push_back(Scenario::segment_endpoints(seg, set));
        }
    }
    for (double r : {1.0, 2.0}) {
        out.push_back(Scenario::circle_constrained(CircleSupport(r)));
        out.push_back(Scenario::circle_unconstrained(CircleSupport(r)));
    }
    for (int m : {3, 4, 5, 6, 8, 12}) {
        out.push_back(Scenario::polygon_vertices(PolygonSupport(m, 1.0)));
    }
    out.push_back(Scenario::polygon_vertices(PolygonSupport(5, 2.0)));
    return out;
}

std::string label(const Scenario& s) {
    return std::visit(
        [&](const auto& sup) -> std::string {
            using T = std::decay_t<decltype(sup)>;
            if constexpr (std::is_same_v<T, SegmentSupport>) {
                return "segment[" + num(sup.a()) + "," + num(sup.b()) + "]/" + std::to_string(s.conditional().size());
            } else if constexpr (std::is_same_v<T, CircleSupport>) {
                return "circle r=" + num(sup.r()) + "/" + to_string(s.flavor());
            } else {
                return "polygon m=" + std::to_string(sup.m()) + " r=" + num(sup.r());
            }
        },
        s.support());
}

asy::ErrorSequence sequence_of(const Scenario& s) {
    const auto grid = asy::geometric_grid(kGridMin, kGridMax, kGridPoints);
    return asy::make_sequence(grid, [&](int n) { return cf::closed_form_error(s, n); });
}

Outcome segment_formulas() {
    double worst = 0.0;
    int runs = 0;
    const SegmentSupport seg(0, 1);
    for (EndpointSet set : {EndpointSet::Left, EndpointSet::Right, EndpointSet::Both}) {
        const Scenario s = Scenario::segment_endpoints(seg, set);
        std::vector<double> cond;
        for (const Point2& p : s.conditional()) {
            cond.push_back(p.x);
        }
        for (int n = std::max<int>(2, cond.size()); n <= 30; ++n) {
            const double dp = orc::dp_conditional_1d({0, 1}, cond, n).error;
            worst = std::max(worst, rel(dp, cf::closed_form_error(s, n)));
            ++runs;
        }
    }
    return {worst <= kSegmentTol,
            "worst relative gap " + num(worst) + " over " + std::to_string(runs) + " (set, n) pairs (tol " +
                num(kSegmentTol) + ")"};
}

Outcome three_interval() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> end_pts(1, 6);
    std::uniform_int_distribution<int> mid_pts(2, 8);
    double worst = 0.0;
    for (int t = 0; t < kThreeIntervalTuples; ++t) {
        const double a = -2.0 + 4.0 * u(rng);
        const double b = a + 0.5 + 3.5 * u(rng);
        double c = a + (b - a) * (0.05 + 0.9 * u(rng));
        double d = a + (b - a) * (0.05 + 0.9 * u(rng));
        if (c > d) {
            std::swap(c, d);
        }
        if (d - c < 0.05 * (b - a)) {
            d = std::min(b - 0.02 * (b - a), c + 0.05 * (b - a));
        }
        const int k = end_pts(rng);
        const int l = mid_pts(rng);
        const int m = end_pts(rng);
        const int n = k + l + m - 2;
        const double formula = cf::segment_three_interval(a, b, c, d, k, l, m).error;
        const double cond[] = {c, d};
        const int free[] = {k - 1, l - 2, m - 1};
        const double dp = orc::dp_conditional_1d({a, b}, cond, n, {}, free).error;
        worst = std::max(worst, rel(dp, formula));
    }
    return {worst <= kThreeIntervalTol, "worst relative gap " + num(worst) + " over " +
                                            std::to_string(kThreeIntervalTuples) + " random tuples (tol " +
                                            num(kThreeIntervalTol) + ")"};
}

Outcome circle_constrained() {
    double quad_worst = 0.0;
    double lloyd_worst = 0.0;
    orc::OracleConfig cfg;
    cfg.restarts = kLloydRestarts;
    for (double r : {1.0, 2.0}) {
        const CircleSupport c(r);
        for (int n = 1; n <= 64; ++n) {
            const auto built = cf::circle_conditional_constrained(c, n);
            quad_worst = std::max(quad_worst, rel(orc::distortion(c, built.codebook), built.error));
        }
        for (int n = 1; n <= 12; ++n) {
            const double v = cf::closed_form_error(Scenario::circle_constrained(c), n);
            lloyd_worst = std::max(lloyd_worst, rel(orc::lloyd_constrained_circle(c, n, cfg).error, v));
        }
    }
    return {quad_worst <= kCircleQuadTol && lloyd_worst <= kLloydTol,
            "quadrature worst " + num(quad_worst) + " (tol " + num(kCircleQuadTol) + "), constrained Lloyd worst " +
                num(lloyd_worst) + " (tol " + num(kLloydTol) + ")"};
}

Outcome circle_unconstrained() {
    double v_worst = 0.0;
    double radius_worst = 0.0;
    orc::OracleConfig cfg;
    cfg.restarts = kLloydRestarts;
    for (double r : {1.0, 2.0}) {
        const CircleSupport c(r);
        for (int n = 1; n <= 12; ++n) {
            const auto run = orc::lloyd_unconstrained(c, n, cfg);
            v_worst = std::max(v_worst, rel(run.error, cf::closed_form_error(Scenario::circle_unconstrained(c), n)));
            const double expected = n * r / pi * std::sin(pi / n);
            for (const Point2& p : run.codebook.points) {
                radius_worst = std::max(radius_worst, std::abs(std::hypot(p.x, p.y) - expected) / r);
            }
        }
    }
    return {v_worst <= kLloydTol && radius_worst <= kRadiusTol,
            "Lloyd V worst " + num(v_worst) + " (tol " + num(kLloydTol) + "), radius worst " + num(radius_worst) +
                " (tol " + num(kRadiusTol) + ")"};
}

std::vector<std::vector<int>> side_choices(int m, int q, std::mt19937_64& rng) {
    std::vector<std::vector<int>> out;
    std::vector<int> mask(m, 0);
    std::fill(mask.end() - q, mask.end(), 1);
    auto sides_of = [&] {
        std::vector<int> sides;
        for (int j = 0; j < m; ++j) {
            if (mask[j]) {
                sides.push_back(j + 1);
            }
        }
        return sides;
    };
    if (q <= 3) {
        do {
            out.push_back(sides_of());
        } while (std::next_permutation(mask.begin(), mask.end()));
        return out;
    }
    for (int i = 0; i < kSampledChoices; ++i) {
        std::shuffle(mask.begin(), mask.end(), rng);
        out.push_back(sides_of());
    }
    return out;
}

Outcome polygon() {
    double worst = 0.0;
    double choice_cf = 0.0;
    double choice_oracle = 0.0;
    long choices = 0;
    std::mt19937_64 rng(7);
    for (int m : {3, 4, 5, 6, 8, 12}) {
        const PolygonSupport poly(m, 1.0);
        const Scenario s = Scenario::polygon_vertices(poly);
        for (int n = m; n <= 5 * m; ++n) {
            const double v = cf::closed_form_error(s, n);
            const double dp = orc::polygon_dp(poly, n).error;
            worst = std::max(worst, rel(dp, v));
            const int q = n % m;
            if (q == 0) {
                continue;
            }
            double first_oracle = NAN;
            for (const auto& sides : side_choices(m, q, rng)) {
                const auto alloc = cf::polygon_allocation(m, n, sides);
                choice_cf = std::max(choice_cf, rel(cf::polygon_conditional(poly, n, sides).error, v));
                const double o = orc::polygon_dp(poly, n, {}, alloc.per_side).error;
                if (std::isnan(first_oracle)) {
                    first_oracle = o;
                }
                choice_oracle = std::max(choice_oracle, rel(o, first_oracle));
                ++choices;
            }
        }
    }
    return {worst <= kPolygonTol && choice_cf <= kSideChoiceTol && choice_oracle <= kSideChoiceTol,
            "oracle vs closed form worst " + num(worst) + " (tol " + num(kPolygonTol) + "); over " +
                std::to_string(choices) + " side choices closed-form spread " + num(choice_cf) +
                ", oracle spread " + num(choice_oracle) + " (tol " + num(kSideChoiceTol) + ")"};
}

Outcome coefficients() {
    double worst = 0.0;
    double slowest = 0.0;
    std::string worst_label;
    for (const Scenario& s : in_scope_scenarios()) {
        const auto t0 = std::chrono::steady_clock::now();
        const double q = asy::coefficient_estimate(sequence_of(s)).value;
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        const double dev = rel(q, *cf::coefficient_target(s));
        if (dev >= worst) {
            worst = dev;
            worst_label = label(s);
        }
    }
    return {worst <= kCoefficientTol && slowest <= kCoefficientSeconds,
            "worst relative deviation " + num(worst) + " at " + worst_label + " (tol " + num(kCoefficientTol) +
                "), slowest scenario " + num(slowest) + " s (limit " + num(kCoefficientSeconds) + " s)"};
}

Outcome dimensions() {
    double worst = 0.0;
    std::string worst_label;
    for (const Scenario& s : in_scope_scenarios()) {
        const double d = std::abs(asy::dimension_estimate(sequence_of(s)) - 1.0);
        if (d >= worst) {
            worst = d;
            worst_label = label(s);
        }
    }
    return {worst <= kDimensionTol,
            "worst |D - 1| " + num(worst) + " at " + worst_label + " (tol " + num(kDimensionTol) + ")"};
}

Outcome independence() {
    double worst = 0.0;
    for (const SegmentSupport& seg : {SegmentSupport(0, 1), SegmentSupport(2, 5)}) {
        std::vector<double> q;
        for (EndpointSet set : {EndpointSet::Left, EndpointSet::Right, EndpointSet::Both}) {
            q.push_back(asy::coefficient_estimate(sequence_of(Scenario::segment_endpoints(seg, set))).value);
        }
        for (double x : q) {
            for (double y : q) {
                worst = std::max(worst, rel(x, y));
            }
        }
    }
    return {worst <= kIndependenceTol,
            "largest pairwise relative difference " + num(worst) + " (tol " + num(kIndependenceTol) + ")"};
}

Outcome properties() {
    using namespace quantacurve::checks;
    const std::pair<const char*, CheckResult> results[] = {
        {"scaling", closed_form_scaling()},
        {"coefficient scaling", coefficient_scaling()},
        {"Lloyd monotonicity", lloyd_monotone(104)},
        {"partition completeness", partition_complete(105)},
        {"round trip", unroll_round_trip(100000, 101)},
        {"isometry", unroll_isometry(100000, 102)},
    };
    Outcome out;
    for (const auto& [name, r] : results) {
        out.ok = out.ok && r.ok;
        out.detail += (out.detail.empty() ? "" : "; ") + std::string(name) + (r.ok ? " ok" : " FAILED") + " (" +
                      r.detail + ")";
    }
    return out;
}

} // namespace

int main() {
    apply_thread_cap_from_env();
    report(1, "segment closed forms vs grid DP", segment_formulas, kSegmentSeconds);
    report(2, "three-interval formula vs grid DP", three_interval, kThreeIntervalSeconds);
    report(3, "circle with base point, constrained", circle_constrained);
    report(4, "circle n-means", circle_unconstrained);
    report(5, "polygon with all vertices", polygon);
    report(6, "quantization coefficients", coefficients);
    report(7, "quantization dimension", dimensions);
    report(8, "coefficient independent of the conditional set", independence);
    report(9, "property suites", properties, kPropertySeconds);
    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
