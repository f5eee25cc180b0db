#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "quantacurve/asymptotics.hpp"
#include "quantacurve/closed_form.hpp"
#include "quantacurve/errors.hpp"

using namespace quantacurve;
using namespace quantacurve::asymptotics;
using std::numbers::pi;

namespace {

ErrorSequence closed_form_sequence(const Scenario& s, int n_min = 100, int n_max = 10000) {
    const auto grid = geometric_grid(n_min, n_max, 25);
    return make_sequence(grid, [&](int n) { return closed_form::closed_form_error(s, n); });
}

} // namespace

TEST_CASE("geometric grid") {
    const auto g = geometric_grid(100, 10000, 25);
    CHECK(g.front() == 100);
    CHECK(g.back() == 10000);
    for (std::size_t i = 1; i < g.size(); ++i) {
        CHECK(g[i] > g[i - 1]);
    }
    CHECK(geometric_grid(5, 7, 10) == std::vector<int>{5, 6, 7});
}

TEST_CASE("dimension") {
    const int ns[] = {10, 20, 40, 80, 160, 320};
    const auto power = make_sequence(ns, [](int n) { return 1.0 / (double(n) * n); });
    CHECK(dimension_estimate(power) == doctest::Approx(1.0).epsilon(1e-12));
    for (double r : pointwise_dimension_ratios(power)) {
        CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto seg = closed_form_sequence(Scenario::segment_endpoints(SegmentSupport(0, 1), EndpointSet::Both), 10);
    CHECK(std::abs(dimension_estimate(seg) - 1.0) < 0.02);
    const auto circ = closed_form_sequence(Scenario::circle_constrained(CircleSupport(1)), 10);
    CHECK(std::abs(dimension_estimate(circ) - 1.0) < 0.02);

    const int few[] = {1, 2, 3, 4};
    CHECK_THROWS_AS(dimension_estimate(make_sequence(few, [](int n) { return 1.0 / n; })), PreconditionError);
    const int flat_ns[] = {1, 2, 3, 4, 5};
    CHECK_THROWS(dimension_estimate(make_sequence(flat_ns, [](int) { return 1.0; })));
}

TEST_CASE("coefficient") {
    const auto seg = closed_form_sequence(Scenario::segment_endpoints(SegmentSupport(0, 1), EndpointSet::Both));
    CHECK(std::abs(coefficient_estimate(seg).value - 1.0 / 12) / (1.0 / 12) < 5e-3);
    const auto circ = closed_form_sequence(Scenario::circle_constrained(CircleSupport(1)));
    CHECK(std::abs(coefficient_estimate(circ).value - pi * pi / 3) / (pi * pi / 3) < 5e-3);
    const auto sq = closed_form_sequence(Scenario::polygon_vertices(PolygonSupport(4, 1)));
    const auto est = coefficient_estimate(sq);
    CHECK(std::abs(est.value - 8.0 / 3) / (8.0 / 3) < 5e-3);
    CHECK(est.value > 0);
    CHECK(est.ci_halfwidth >= 0);
    CHECK_FALSE(est.model.empty());
}

TEST_CASE("limit of the error") {
    const auto seg = closed_form_sequence(Scenario::segment_endpoints(SegmentSupport(0, 1), EndpointSet::Both));
    CHECK(std::abs(v_infinity_estimate(seg)) <= 1e-4 * seg.entries.front().v);
    const auto circ = closed_form_sequence(Scenario::circle_constrained(CircleSupport(1)));
    CHECK(std::abs(v_infinity_estimate(circ)) <= 1e-4 * circ.entries.front().v);

    const auto grid = geometric_grid(10, 1000, 20);
    const auto planted = make_sequence(grid, [](int n) { return 0.5 + 1.0 / (double(n) * n); });
    CHECK(std::abs(v_infinity_estimate(planted) - 0.5) < 1e-3);

    // decreasing, but with jumps at powers of two no power law can follow
    const auto ragged = make_sequence(grid, [](int n) { return 1.0 / n + 0.2 / std::bit_floor(unsigned(n)); });
    CHECK_THROWS_AS(v_infinity_estimate(ragged), FitError);
}
