#include "quantacurve/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quantacurve/errors.hpp"

namespace quantacurve::closed_form {

namespace {

constexpr double kPi = std::numbers::pi;

const char* const kSupported =
    "supported configurations: segment with conditional set {a}, {b} or {a, b}; "
    "circle with conditional set {(r, 0)} constrained to the circle; "
    "circle without conditional set or constraint; "
    "regular polygon with all vertices as conditional set";

// 1 - sin(x)/x without cancellation for small x.
double one_minus_sinc(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
    }
    return 1.0 - std::sin(x) / x;
}

double sinc(double x) { return 1.0 - one_minus_sinc(x); }

double segment_error(double length, EndpointSet set, int n) {
    if (set == EndpointSet::Both) {
        return length * length / (12.0 * (n - 1.0) * (n - 1.0));
    }
    return length * length / (3.0 * (2.0 * n - 1.0) * (2.0 * n - 1.0));
}

double circle_constrained_error(double r, int n) {
    if (n == 1) {
        return 2.0 * r * r;
    }
    return 2.0 * r * r * one_minus_sinc(kPi / n);
}

double circle_means_error(double r, int n) {
    if (n == 1) {
        return r * r;
    }
    const double s = sinc(kPi / n);
    return r * r * one_minus_sinc(kPi / n) * (1.0 + s);
}

double polygon_error(const PolygonSupport& support, const Allocation& alloc) {
    const int m = support.m();
    const double r = support.r();
    const double sin2 = std::pow(std::sin(kPi / m), 2);
    const double k = alloc.k;
    const double q = alloc.q;
    if (alloc.q == 0) {
        return r * r * sin2 / (3.0 * k * k);
    }
    return r * r * q * sin2 / (3.0 * m * (k + 1.0) * (k + 1.0)) + r * r * (m - q) * sin2 / (3.0 * m * k * k);
}

void require_n(bool ok, const std::string& what) {
    if (!ok) {
        throw PreconditionError(what);
    }
}

bool near(Point2 p, Point2 q, double scale) { return distance(p, q) <= 1e-9 * std::max(1.0, scale); }

// Which endpoints of the segment the conditional set names, if it is one
// of the three supported sets.
std::optional<EndpointSet> endpoint_set(const SegmentSupport& seg, const std::vector<Point2>& cond) {
    const Point2 a{seg.a(), 0.0};
    const Point2 b{seg.b(), 0.0};
    const double scale = std::max(std::abs(seg.a()), std::abs(seg.b()));
    bool has_a = false;
    bool has_b = false;
    for (const Point2& p : cond) {
        if (near(p, a, scale)) {
            has_a = true;
        } else if (near(p, b, scale)) {
            has_b = true;
        } else {
            return std::nullopt;
        }
    }
    if (cond.size() == 2 && has_a && has_b) {
        return EndpointSet::Both;
    }
    if (cond.size() == 1) {
        return has_a ? EndpointSet::Left : EndpointSet::Right;
    }
    return std::nullopt;
}

bool is_all_vertices(const PolygonSupport& poly, const std::vector<Point2>& cond) {
    if (static_cast<int>(cond.size()) != poly.m()) {
        return false;
    }
    for (int j = 1; j <= poly.m(); ++j) {
        const Point2 v = poly.vertex(j);
        if (std::none_of(cond.begin(), cond.end(), [&](const Point2& p) { return near(p, v, poly.r()); })) {
            return false;
        }
    }
    return true;
}

enum class Family { SegmentEndpoints, CircleConstrained, CircleMeans, PolygonVertices };

Family classify(const Scenario& scenario) {
    const Support& support = scenario.support();
    const auto& cond = scenario.conditional();
    if (const auto* seg = std::get_if<SegmentSupport>(&support)) {
        if (scenario.flavor() == Flavor::ConditionalUnconstrained && endpoint_set(*seg, cond)) {
            return Family::SegmentEndpoints;
        }
    } else if (const auto* circle = std::get_if<CircleSupport>(&support)) {
        if (scenario.flavor() == Flavor::ConditionalConstrained && cond.size() == 1 &&
            near(cond.front(), {circle->r(), 0.0}, circle->r())) {
            return Family::CircleConstrained;
        }
        if (scenario.flavor() == Flavor::Unconstrained) {
            return Family::CircleMeans;
        }
    } else if (const auto* poly = std::get_if<PolygonSupport>(&support)) {
        if (scenario.flavor() == Flavor::ConditionalUnconstrained && is_all_vertices(*poly, cond)) {
            return Family::PolygonVertices;
        }
    }
    throw UnsupportedScenario(std::string("no closed form for this scenario; ") + kSupported);
}

} // namespace

QuantizationOutcome segment_three_interval(double a, double b, double c, double d, int k, int l, int m) {
    if (!(a < c && c < d && d < b)) {
        throw PreconditionError("segment_three_interval: need a < c < d < b");
    }
    if (k < 1 || m < 1 || l < 2) {
        throw PreconditionError("segment_three_interval: need k, m >= 1 and l >= 2");
    }
    std::vector<Point2> pts;
    for (int j = 1; j < k; ++j) {
        pts.push_back({a + (2.0 * j - 1.0) * (c - a) / (2.0 * k - 1.0), 0.0});
    }
    for (int j = 1; j <= l; ++j) {
        const double x = j == 1 ? c : (j == l ? d : c + (j - 1.0) / (l - 1.0) * (d - c));
        pts.push_back({x, 0.0});
    }
    for (int j = 2; j <= m; ++j) {
        pts.push_back({d + 2.0 * (j - 1.0) * (b - d) / (2.0 * m - 1.0), 0.0});
    }
    const double error = (std::pow(c - a, 3) / std::pow(2.0 * k - 1.0, 2) +
                          0.25 * std::pow(d - c, 3) / std::pow(l - 1.0, 2) +
                          std::pow(b - d, 3) / std::pow(2.0 * m - 1.0, 2)) /
                         (3.0 * (b - a));
    Scenario scenario(SegmentSupport(a, b), {{c, 0.0}, {d, 0.0}}, Flavor::ConditionalUnconstrained);
    return {{std::move(pts)}, error, std::move(scenario), Provenance::ClosedForm, {}};
}

QuantizationOutcome segment_conditional(const SegmentSupport& support, EndpointSet conditional, int n) {
    const int required = conditional == EndpointSet::Both ? 2 : 1;
    require_n(n >= required, "segment_conditional: n must be >= " + std::to_string(required));
    const double a = support.a();
    const double b = support.b();
    const double len = support.length();
    std::vector<Point2> pts;
    for (int j = 1; j <= n; ++j) {
        double x = 0.0;
        switch (conditional) {
        case EndpointSet::Both:
            x = j == n ? b : a + (j - 1.0) * len / (n - 1.0);
            break;
        case EndpointSet::Left:
            x = a + 2.0 * (j - 1.0) * len / (2.0 * n - 1.0);
            break;
        case EndpointSet::Right:
            x = j == n ? b : a + (2.0 * j - 1.0) * len / (2.0 * n - 1.0);
            break;
        }
        pts.push_back({x, 0.0});
    }
    return {{std::move(pts)}, segment_error(len, conditional, n), Scenario::segment_endpoints(support, conditional),
            Provenance::ClosedForm, {}};
}

QuantizationOutcome circle_conditional_constrained(const CircleSupport& support, int n) {
    require_n(n >= 1, "circle_conditional_constrained: n must be >= 1");
    const double r = support.r();
    std::vector<Point2> pts;
    pts.push_back({r, 0.0});
    for (int j = 2; j <= n; ++j) {
        const double theta = (j - 1.0) * 2.0 * kPi / n;
        pts.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
    return {{std::move(pts)}, circle_constrained_error(r, n), Scenario::circle_constrained(support),
            Provenance::ClosedForm, {}};
}

QuantizationOutcome circle_unconstrained_means(const CircleSupport& support, int n) {
    require_n(n >= 1, "circle_unconstrained_means: n must be >= 1");
    const double r = support.r();
    std::vector<Point2> pts;
    if (n == 1) {
        pts.push_back({0.0, 0.0});
    } else {
        const double radius = n * r / kPi * std::sin(kPi / n);
        for (int j = 1; j <= n; ++j) {
            const double theta = (2.0 * j - 1.0) * kPi / n;
            pts.push_back({radius * std::cos(theta), radius * std::sin(theta)});
        }
    }
    return {{std::move(pts)}, circle_means_error(r, n), Scenario::circle_unconstrained(support),
            Provenance::ClosedForm, {}};
}

Allocation polygon_allocation(int m, int n, std::span<const int> chosen_sides) {
    if (m < 3) {
        throw PreconditionError("polygon_allocation: m must be >= 3");
    }
    require_n(n >= m, "polygon_allocation: n must be >= m");
    Allocation out;
    out.k = n / m;
    out.q = n % m;
    std::vector<bool> extra(m, false);
    if (chosen_sides.empty()) {
        std::fill(extra.begin(), extra.begin() + out.q, true);
    } else {
        if (static_cast<int>(chosen_sides.size()) != out.q) {
            throw PreconditionError("polygon_allocation: " + std::to_string(chosen_sides.size()) +
                                    " chosen sides given but q = " + std::to_string(out.q));
        }
        for (int side : chosen_sides) {
            if (side < 1 || side > m || extra[side - 1]) {
                throw PreconditionError("polygon_allocation: chosen sides must be distinct indices in [1, m]");
            }
            extra[side - 1] = true;
        }
    }
    for (int j = 0; j < m; ++j) {
        out.per_side.push_back(extra[j] ? out.k + 2 : out.k + 1);
    }
    return out;
}

QuantizationOutcome polygon_conditional(const PolygonSupport& support, int n, std::optional<std::vector<int>> chosen_sides) {
    const int m = support.m();
    const Allocation alloc =
        chosen_sides ? polygon_allocation(m, n, *chosen_sides) : polygon_allocation(m, n);
    const UnrollCoeffs coeffs = polygon_unroll_coeffs(support);
    const double chord = 2.0 * support.r() * std::sin(kPi / m);
    std::vector<Point2> pts;
    for (int j = 1; j <= m; ++j) {
        const int count = alloc.per_side[j - 1];
        // The side's far vertex is emitted as the first point of the next side.
        for (int i = 1; i < count; ++i) {
            const double s = i == 1 ? coeffs.c[j - 1] : coeffs.c[j - 1] + (i - 1.0) * chord / (count - 1.0);
            pts.push_back(polygon_unroll_inv(support, s).point);
        }
    }
    return {{std::move(pts)}, polygon_error(support, alloc), Scenario::polygon_vertices(support),
            Provenance::ClosedForm, {}};
}

double closed_form_error(const Scenario& scenario, int n) {
    const Support& support = scenario.support();
    switch (classify(scenario)) {
    case Family::SegmentEndpoints: {
        const auto& seg = std::get<SegmentSupport>(support);
        const EndpointSet set = *endpoint_set(seg, scenario.conditional());
        require_n(n >= (set == EndpointSet::Both ? 2 : 1), "closed_form_error: n below the conditional set size");
        return segment_error(seg.length(), set, n);
    }
    case Family::CircleConstrained:
        require_n(n >= 1, "closed_form_error: n must be >= 1");
        return circle_constrained_error(std::get<CircleSupport>(support).r(), n);
    case Family::CircleMeans:
        require_n(n >= 1, "closed_form_error: n must be >= 1");
        return circle_means_error(std::get<CircleSupport>(support).r(), n);
    case Family::PolygonVertices: {
        const auto& poly = std::get<PolygonSupport>(support);
        return polygon_error(poly, polygon_allocation(poly.m(), n));
    }
    }
    throw UnsupportedScenario(kSupported);
}

QuantizationOutcome solve(const Scenario& scenario, int n) {
    const Support& support = scenario.support();
    switch (classify(scenario)) {
    case Family::SegmentEndpoints: {
        const auto& seg = std::get<SegmentSupport>(support);
        return segment_conditional(seg, *endpoint_set(seg, scenario.conditional()), n);
    }
    case Family::CircleConstrained:
        return circle_conditional_constrained(std::get<CircleSupport>(support), n);
    case Family::CircleMeans:
        return circle_unconstrained_means(std::get<CircleSupport>(support), n);
    case Family::PolygonVertices:
        return polygon_conditional(std::get<PolygonSupport>(support), n);
    }
    throw UnsupportedScenario(kSupported);
}

std::optional<double> coefficient_target(const Scenario& scenario) {
    const Support& support = scenario.support();
    switch (classify(scenario)) {
    case Family::SegmentEndpoints: {
        const double len = std::get<SegmentSupport>(support).length();
        return len * len / 12.0;
    }
    case Family::CircleConstrained:
    case Family::CircleMeans: {
        const double r = std::get<CircleSupport>(support).r();
        return kPi * kPi * r * r / 3.0;
    }
    case Family::PolygonVertices: {
        const auto& poly = std::get<PolygonSupport>(support);
        const double m = poly.m();
        return m * m * poly.r() * poly.r() * std::pow(std::sin(kPi / m), 2) / 3.0;
    }
    }
    return std::nullopt;
}

} // namespace quantacurve::closed_form
