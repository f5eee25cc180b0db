#include "quantacurve/scenario.hpp"

#include <algorithm>

#include "quantacurve/errors.hpp"

namespace quantacurve {

std::string to_string(Flavor flavor) {
    switch (flavor) {
    case Flavor::ConditionalUnconstrained:
        return "conditional-unconstrained";
    case Flavor::ConditionalConstrained:
        return "conditional-constrained";
    case Flavor::Unconstrained:
        return "unconstrained";
    }
    return "unknown";
}

std::string to_string(Provenance provenance) {
    return provenance == Provenance::ClosedForm ? "closed-form" : "oracle";
}

std::string to_string(EndpointSet set) {
    switch (set) {
    case EndpointSet::Left:
        return "left";
    case EndpointSet::Right:
        return "right";
    case EndpointSet::Both:
        return "both";
    }
    return "unknown";
}

Scenario::Scenario(Support support, std::vector<Point2> conditional, Flavor flavor)
    : support_(std::move(support)), conditional_(std::move(conditional)), flavor_(flavor) {
    const bool is_conditional = flavor_ != Flavor::Unconstrained;
    if (is_conditional && conditional_.empty()) {
        throw PreconditionError("conditional scenarios need at least one conditional point");
    }
    if (!is_conditional && !conditional_.empty()) {
        throw PreconditionError("unconstrained scenarios carry no conditional set");
    }
    const double tol = 1e-9 * std::max(1.0, total_length(support_));
    for (const Point2& p : conditional_) {
        if (distance_to_support(support_, p) > tol) {
            throw GeometryError("conditional point does not lie on the support");
        }
    }
}

Scenario Scenario::segment_endpoints(const SegmentSupport& support, EndpointSet set) {
    std::vector<Point2> cond;
    if (set != EndpointSet::Right) {
        cond.push_back({support.a(), 0.0});
    }
    if (set != EndpointSet::Left) {
        cond.push_back({support.b(), 0.0});
    }
    return {support, std::move(cond), Flavor::ConditionalUnconstrained};
}

Scenario Scenario::circle_constrained(const CircleSupport& support) {
    return {support, {{support.r(), 0.0}}, Flavor::ConditionalConstrained};
}

Scenario Scenario::circle_unconstrained(const CircleSupport& support) {
    return {support, {}, Flavor::Unconstrained};
}

Scenario Scenario::polygon_vertices(const PolygonSupport& support) {
    std::vector<Point2> cond;
    for (int j = 1; j <= support.m(); ++j) {
        cond.push_back(support.vertex(j));
    }
    return {support, std::move(cond), Flavor::ConditionalUnconstrained};
}

Scenario Scenario::scaled(double lambda) const {
    std::vector<Point2> cond;
    for (const Point2& p : conditional_) {
        cond.push_back({lambda * p.x, lambda * p.y});
    }
    return {quantacurve::scaled(support_, lambda), std::move(cond), flavor_};
}

bool contains_all(const Codebook& codebook, std::span<const Point2> required, double tol) {
    return std::all_of(required.begin(), required.end(), [&](const Point2& q) {
        return std::any_of(codebook.points.begin(), codebook.points.end(),
                           [&](const Point2& p) { return distance(p, q) <= tol; });
    });
}

} // namespace quantacurve
