#include <doctest.h>

#include <cmath>
#include <numbers>

#include "quantacurve/curve_supports.hpp"
#include "quantacurve/errors.hpp"

using namespace quantacurve;
using std::numbers::pi;

namespace {
bool near(Point2 p, Point2 q, double tol = 1e-12) { return distance(p, q) <= tol; }
} // namespace

TEST_CASE("circle unrolling maps angle to arc length") {
    CHECK(circle_unroll(CircleSupport(1), pi) == doctest::Approx(pi));
    CHECK(circle_unroll(CircleSupport(2), 0.0) == 0.0);
    CHECK(circle_unroll(CircleSupport(3), 2 * pi) == doctest::Approx(6 * pi));
    CHECK_THROWS_AS(circle_unroll(CircleSupport(1), -0.1), DomainError);
    CHECK_THROWS_AS(circle_unroll(CircleSupport(1), 2 * pi + 0.1), DomainError);
}

TEST_CASE("circle inverse") {
    CHECK(near(circle_unroll_inv(CircleSupport(1), pi), {-1, 0}));
    CHECK(circle_unroll_inv(CircleSupport(1), 0.0) == Point2{1, 0});
    CHECK(near(circle_unroll_inv(CircleSupport(2), pi), {0, 2}));
    CHECK(circle_unroll_inv(CircleSupport(1), 2 * pi) == Point2{1, 0});
    CHECK_THROWS_AS(circle_unroll_inv(CircleSupport(1), 7.0), DomainError);
    CHECK(circle_unroll(CircleSupport(1), Point2{1, 0}) == 0.0);
}

TEST_CASE("polygon coefficients") {
    const auto sq = polygon_unroll_coeffs(PolygonSupport(4, 1));
    REQUIRE(sq.c.size() == 5);
    for (int j = 0; j < 5; ++j) {
        CHECK(sq.c[j] == doctest::Approx(j * std::sqrt(2.0)));
    }
    const auto tri = polygon_unroll_coeffs(PolygonSupport(3, 1));
    CHECK(tri.c[3] == doctest::Approx(3 * std::sqrt(3.0)));

    for (int m = 3; m <= 12; ++m) {
        const PolygonSupport poly(m, 1.7);
        const auto cf = polygon_unroll_coeffs(poly);
        for (int j = 1; j <= m; ++j) {
            const Point2 a = poly.vertex(j);
            const Point2 b = poly.vertex(j + 1);
            CHECK(cf.a[j - 1] * a.x + cf.b[j - 1] * a.y == doctest::Approx(cf.c[j - 1]).epsilon(1e-12));
            CHECK(cf.a[j - 1] * b.x + cf.b[j - 1] * b.y == doctest::Approx(cf.c[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("polygon forward map") {
    const PolygonSupport sq(4, 1);
    CHECK(polygon_unroll(sq, {1, 0}, 1) == 0.0);
    CHECK(polygon_unroll(sq, {0, 1}, 1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(polygon_unroll(sq, {0.5, 0.5}, 1) == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK_THROWS_AS(polygon_unroll(sq, {0.5, 0.5}, 2), GeometryError);
    CHECK_THROWS_AS(polygon_unroll(sq, {0.6, 0.6}, 1), GeometryError);
    // the base vertex maps to 0 from either neighbouring side
    CHECK(polygon_unroll(sq, {1, 0}, 4) == 0.0);
    CHECK(polygon_unroll(sq, {0, -1}, 4) == doctest::Approx(3 * std::sqrt(2.0)));
}

TEST_CASE("polygon inverse and vertex ties") {
    const PolygonSupport sq(4, 1);
    const SidePoint base = polygon_unroll_inv(sq, 0.0);
    CHECK(base.point == Point2{1, 0});
    CHECK(base.side == 1);
    const SidePoint v2 = polygon_unroll_inv(sq, std::sqrt(2.0));
    CHECK(near(v2.point, {0, 1}));
    CHECK(v2.side == 2);
    const SidePoint end = polygon_unroll_inv(sq, sq.length());
    CHECK(end.point == Point2{1, 0});

    const PolygonSupport tri(3, 1);
    const double ell = tri.side_length();
    const SidePoint mid = polygon_unroll_inv(tri, ell + ell / 2);
    const Point2 a = tri.vertex(2);
    const Point2 b = tri.vertex(3);
    CHECK(near(mid.point, {(a.x + b.x) / 2, (a.y + b.y) / 2}));
    CHECK(mid.side == 2);
    CHECK_THROWS_AS(polygon_unroll_inv(tri, -1e-3), DomainError);
}

TEST_CASE("measure of arcs") {
    CHECK(measure_of_arc(CircleSupport(1), {0, pi / 2}) == doctest::Approx(0.25));
    CHECK(measure_of_arc(SegmentSupport(0, 1), {0.2, 0.5}) == doctest::Approx(0.3));
    const PolygonSupport sq(4, 1);
    CHECK(measure_of_arc(sq, {sq.side_length(), 2 * sq.side_length()}) == doctest::Approx(0.25));
    // wrapped arc through the base point
    CHECK(measure_of_arc(CircleSupport(1), {1.5 * pi, 2.5 * pi}) == doctest::Approx(0.5));
}

TEST_CASE("support validation") {
    CHECK_THROWS_AS(SegmentSupport(1, 1), DomainError);
    CHECK_THROWS_AS(CircleSupport(0), DomainError);
    CHECK_THROWS_AS(PolygonSupport(2, 1), DomainError);
    CHECK_THROWS_AS(PolygonSupport(5, -1), DomainError);
}

TEST_CASE("arc-length view") {
    const PolygonSupport hex(6, 2);
    for (double s : {0.0, 0.3, 2.0, 5.5, 11.9}) {
        const Point2 p = point_at(hex, s);
        CHECK(parameter_of(hex, p) == doctest::Approx(s).epsilon(1e-12));
        CHECK(distance_to_support(hex, p) < 1e-12);
    }
    CHECK(point_at(SegmentSupport(2, 5), 1.0) == Point2{3, 0});
    CHECK(smooth_breaks(hex).size() == 7);
    CHECK(total_length(scaled(Support{CircleSupport(1)}, 3.0)) == doctest::Approx(6 * pi));
}
