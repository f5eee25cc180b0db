#pragma once

#include <variant>
#include <vector>

namespace quantacurve {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

// Squared Euclidean distance.
double rho(Point2 p, Point2 q);
double distance(Point2 p, Point2 q);

// Closed parameter interval [lo, hi] along a support, in arc length.
// On the closed curves (circle, polygon) hi may exceed the total length,
// in which case the interval wraps through the base vertex (r, 0).
struct ParamInterval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
};

class SegmentSupport {
public:
    SegmentSupport(double a, double b);

    double a() const { return a_; }
    double b() const { return b_; }
    double length() const { return b_ - a_; }
    SegmentSupport scaled(double lambda) const;

private:
    double a_;
    double b_;
};

// Circle of radius r centred at the origin, parametrized by angle.
class CircleSupport {
public:
    explicit CircleSupport(double r);

    double r() const { return r_; }
    double length() const;
    CircleSupport scaled(double lambda) const;

private:
    double r_;
};

// Boundary of the regular m-gon inscribed in the circle of radius r with
// its first vertex at (r, 0). Sides and vertices are 1-based like the
// usual A_1 ... A_m labelling; vertex m + 1 is identified with vertex 1.
class PolygonSupport {
public:
    PolygonSupport(int m, double r);

    int m() const { return m_; }
    double r() const { return r_; }
    double side_length() const;
    double length() const;
    Point2 vertex(int j) const;
    PolygonSupport scaled(double lambda) const;

private:
    int m_;
    double r_;
};

using Support = std::variant<SegmentSupport, CircleSupport, PolygonSupport>;

// Coefficients of the piecewise-linear unrolling of a polygon boundary:
// side j maps (x, y) to a[j-1] * x + b[j-1] * y, landing in [c[j-1], c[j]].
struct UnrollCoeffs {
    std::vector<double> a;  // size m
    std::vector<double> b;  // size m
    std::vector<double> c;  // size m + 1, c.front() == 0
};

struct SidePoint {
    Point2 point;
    int side = 1;
};

double circle_unroll(const CircleSupport& support, double theta);
// Forward map of a point already on the circle; (r, 0) goes to 0.
double circle_unroll(const CircleSupport& support, Point2 p);
Point2 circle_unroll_inv(const CircleSupport& support, double s);

UnrollCoeffs polygon_unroll_coeffs(const PolygonSupport& support);
double polygon_unroll(const PolygonSupport& support, Point2 p, int side);
SidePoint polygon_unroll_inv(const PolygonSupport& support, double s);

// Normalized length of the region; regions are clipped to the support.
double measure_of_arc(const Support& support, ParamInterval region);

// ---- arc-length view shared by the numerical code ----

double total_length(const Support& support);
bool is_closed(const Support& support);
// Point at arc length s from the base point (a for segments, (r, 0) otherwise).
Point2 point_at(const Support& support, double s);
// Arc-length parameter of the support point nearest to p.
double parameter_of(const Support& support, Point2 p);
// Parameters at which the curve is not smooth (polygon vertices).
std::vector<double> smooth_breaks(const Support& support);
// Distance from p to the support curve.
double distance_to_support(const Support& support, Point2 p);
Support scaled(const Support& support, double lambda);

} // namespace quantacurve
