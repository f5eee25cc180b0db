#include "quantacurve/curve_supports.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "quantacurve/errors.hpp"

namespace quantacurve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Relative tolerance for "point lies on side j".
constexpr double kSideTol = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

struct SideProjection {
    double t;         // position along the side, 0 at A_j, 1 at A_{j+1}
    double distance;  // distance from the side's line
};

SideProjection project_on_side(const PolygonSupport& poly, Point2 p, int side) {
    const Point2 a = poly.vertex(side);
    const Point2 b = poly.vertex(side + 1);
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    const double px = p.x - a.x;
    const double py = p.y - a.y;
    return {(px * dx + py * dy) / len2, std::abs(px * dy - py * dx) / std::sqrt(len2)};
}

double wrap(double s, double total) {
    if (s >= 0.0 && s <= total) {
        return s;
    }
    double w = std::fmod(s, total);
    if (w < 0.0) {
        w += total;
    }
    return w;
}

} // namespace

double rho(Point2 p, Point2 q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

double distance(Point2 p, Point2 q) { return std::sqrt(rho(p, q)); }

SegmentSupport::SegmentSupport(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw DomainError("segment support requires finite a < b");
    }
}

SegmentSupport SegmentSupport::scaled(double lambda) const {
    return {lambda * a_, lambda * b_};
}

CircleSupport::CircleSupport(double r) : r_(r) {
    if (!std::isfinite(r) || !(r > 0.0)) {
        throw DomainError("circle support requires r > 0");
    }
}

double CircleSupport::length() const { return kTwoPi * r_; }

CircleSupport CircleSupport::scaled(double lambda) const { return CircleSupport(lambda * r_); }

PolygonSupport::PolygonSupport(int m, double r) : m_(m), r_(r) {
    if (m < 3) {
        throw DomainError("polygon support requires m >= 3, got " + std::to_string(m));
    }
    if (!std::isfinite(r) || !(r > 0.0)) {
        throw DomainError("polygon support requires r > 0");
    }
}

double PolygonSupport::side_length() const { return 2.0 * r_ * std::sin(std::numbers::pi / m_); }

double PolygonSupport::length() const { return m_ * side_length(); }

Point2 PolygonSupport::vertex(int j) const {
    const int k = ((j - 1) % m_ + m_) % m_;
    if (k == 0) {
        return {r_, 0.0};
    }
    const double angle = k * kTwoPi / m_;
    return {r_ * std::cos(angle), r_ * std::sin(angle)};
}

PolygonSupport PolygonSupport::scaled(double lambda) const { return {m_, lambda * r_}; }

double circle_unroll(const CircleSupport& support, double theta) {
    if (!(theta >= 0.0 && theta <= kTwoPi)) {
        throw DomainError("circle_unroll: theta must lie in [0, 2*pi]");
    }
    return support.r() * theta;
}

double circle_unroll(const CircleSupport& support, Point2 p) {
    double theta = std::atan2(p.y, p.x);
    if (theta < 0.0) {
        theta += kTwoPi;
    }
    if (theta >= kTwoPi) {
        theta = 0.0;
    }
    return support.r() * theta;
}

Point2 circle_unroll_inv(const CircleSupport& support, double s) {
    const double r = support.r();
    if (!(s >= 0.0 && s <= support.length())) {
        throw DomainError("circle_unroll_inv: s must lie in [0, 2*pi*r]");
    }
    if (s == 0.0 || s == support.length()) {
        return {r, 0.0};
    }
    const double theta = s / r;
    return {r * std::cos(theta), r * std::sin(theta)};
}

UnrollCoeffs polygon_unroll_coeffs(const PolygonSupport& support) {
    const int m = support.m();
    const double pi = std::numbers::pi;
    const double sec = 1.0 / std::cos(pi / m);
    const double b_scale = 2.0 * std::sin(pi / m) / std::sin(2.0 * pi / m);
    const double side = support.side_length();

    UnrollCoeffs out;
    out.a.resize(m);
    out.b.resize(m);
    out.c.resize(m + 1);
    for (int j = 1; j <= m; ++j) {
        const double prev = 2.0 * pi * (j - 1) / m;
        const double next = 2.0 * pi * j / m;
        out.a[j - 1] = -sec * (j * std::sin(prev) - (j - 1) * std::sin(next));
        out.b[j - 1] = -b_scale * ((j - 1) * std::cos(next) - j * std::cos(prev));
    }
    for (int j = 1; j <= m + 1; ++j) {
        out.c[j - 1] = (j - 1) * side;
    }
    return out;
}

double polygon_unroll(const PolygonSupport& support, Point2 p, int side) {
    const int m = support.m();
    if (side < 1 || side > m) {
        throw DomainError("polygon_unroll: side index out of range");
    }
    const SideProjection proj = project_on_side(support, p, side);
    if (proj.distance > kSideTol * support.r() || proj.t < -kSideTol || proj.t > 1.0 + kSideTol) {
        throw GeometryError("polygon_unroll: point is not on side " + std::to_string(side));
    }
    // The base vertex maps to 0 whichever side it is reported on.
    if (side == m && distance(p, support.vertex(1)) <= kSideTol * support.r()) {
        return 0.0;
    }
    const UnrollCoeffs coeffs = polygon_unroll_coeffs(support);
    const double s = coeffs.a[side - 1] * p.x + coeffs.b[side - 1] * p.y;
    return std::clamp(s, coeffs.c[side - 1], coeffs.c[side]);
}

SidePoint polygon_unroll_inv(const PolygonSupport& support, double s) {
    const int m = support.m();
    const double side_len = support.side_length();
    const double total = support.length();
    if (!(s >= 0.0 && s <= total)) {
        throw DomainError("polygon_unroll_inv: s must lie in [0, 2*m*r*sin(pi/m)]");
    }
    if (s == total) {
        return {support.vertex(1), m};
    }
    // Half-open sides [c_j, c_{j+1}): a vertex belongs to the side it starts.
    int j = std::clamp(static_cast<int>(s / side_len) + 1, 1, m);
    while (j > 1 && s < (j - 1) * side_len) {
        --j;
    }
    while (j < m && s >= j * side_len) {
        ++j;
    }
    const double t = (s - (j - 1) * side_len) / side_len;
    if (t == 0.0) {
        return {support.vertex(j), j};
    }
    const Point2 a = support.vertex(j);
    const Point2 b = support.vertex(j + 1);
    return {{(1.0 - t) * a.x + t * b.x, (1.0 - t) * a.y + t * b.y}, j};
}

double total_length(const Support& support) {
    return std::visit([](const auto& s) { return s.length(); }, support);
}

bool is_closed(const Support& support) {
    return !std::holds_alternative<SegmentSupport>(support);
}

double measure_of_arc(const Support& support, ParamInterval region) {
    const double total = total_length(support);
    double len = 0.0;
    if (is_closed(support)) {
        len = std::clamp(region.hi - region.lo, 0.0, total);
    } else {
        len = std::max(0.0, std::min(region.hi, total) - std::max(region.lo, 0.0));
    }
    return len / total;
}

Point2 point_at(const Support& support, double s) {
    return std::visit(
        overloaded{
            [&](const SegmentSupport& seg) {
                return Point2{seg.a() + std::clamp(s, 0.0, seg.length()), 0.0};
            },
            [&](const CircleSupport& circle) {
                return circle_unroll_inv(circle, wrap(s, circle.length()));
            },
            [&](const PolygonSupport& poly) {
                return polygon_unroll_inv(poly, wrap(s, poly.length())).point;
            },
        },
        support);
}

double parameter_of(const Support& support, Point2 p) {
    return std::visit(
        overloaded{
            [&](const SegmentSupport& seg) { return std::clamp(p.x - seg.a(), 0.0, seg.length()); },
            [&](const CircleSupport& circle) { return circle_unroll(circle, p); },
            [&](const PolygonSupport& poly) {
                double best_dist = std::numeric_limits<double>::infinity();
                double best_s = 0.0;
                const double side_len = poly.side_length();
                for (int j = 1; j <= poly.m(); ++j) {
                    const SideProjection proj = project_on_side(poly, p, j);
                    const double t = std::clamp(proj.t, 0.0, 1.0);
                    const Point2 a = poly.vertex(j);
                    const Point2 b = poly.vertex(j + 1);
                    const Point2 foot{(1.0 - t) * a.x + t * b.x, (1.0 - t) * a.y + t * b.y};
                    const double d = distance(p, foot);
                    if (d < best_dist) {
                        best_dist = d;
                        best_s = (j - 1 + t) * side_len;
                    }
                }
                return best_s >= poly.length() ? 0.0 : best_s;
            },
        },
        support);
}

std::vector<double> smooth_breaks(const Support& support) {
    std::vector<double> out;
    if (const auto* poly = std::get_if<PolygonSupport>(&support)) {
        const double side_len = poly->side_length();
        for (int j = 0; j <= poly->m(); ++j) {
            out.push_back(j * side_len);
        }
    }
    return out;
}

double distance_to_support(const Support& support, Point2 p) {
    return std::visit(
        overloaded{
            [&](const SegmentSupport& seg) {
                return std::hypot(p.x - std::clamp(p.x, seg.a(), seg.b()), p.y);
            },
            [&](const CircleSupport& circle) { return std::abs(std::hypot(p.x, p.y) - circle.r()); },
            [&](const PolygonSupport& poly) { return distance(p, point_at(poly, parameter_of(poly, p))); },
        },
        support);
}

Support scaled(const Support& support, double lambda) {
    return std::visit([&](const auto& s) -> Support { return s.scaled(lambda); }, support);
}

} // namespace quantacurve
