#pragma once

#include <optional>
#include <span>
#include <vector>

#include "quantacurve/curve_supports.hpp"
#include "quantacurve/scenario.hpp"

// Closed-form optimal codebooks and quantization errors for uniform
// distributions on segments, circles and regular-polygon boundaries.
namespace quantacurve::closed_form {

// Division of n support points among the m polygon sides: n = m k + q,
// per_side[j - 1] counts the unrolled points on side j, both vertices
// included, so the counts sum to n + m.
struct Allocation {
    int k = 0;
    int q = 0;
    std::vector<int> per_side;
};

// Uniform law on [a, b] with conditional set {c, d}, a < c < d < b, and k,
// l, m points on [a, c], [c, d], [d, b] respectively (c and d counted in
// both neighbours), n = k + l + m - 2.
QuantizationOutcome segment_three_interval(double a, double b, double c, double d, int k, int l, int m);

QuantizationOutcome segment_conditional(const SegmentSupport& support, EndpointSet conditional, int n);

// Conditional set {(r, 0)}, free points constrained to the circle.
QuantizationOutcome circle_conditional_constrained(const CircleSupport& support, int n);

// Optimal n-means with no constraint and no conditional set.
QuantizationOutcome circle_unconstrained_means(const CircleSupport& support, int n);

// `chosen_sides` (1-based) are the q sides that get the extra point;
// defaults to {1, ..., q}.
Allocation polygon_allocation(int m, int n, std::span<const int> chosen_sides = {});

// Conditional set = all m vertices.
QuantizationOutcome polygon_conditional(const PolygonSupport& support, int n,
                                        std::optional<std::vector<int>> chosen_sides = std::nullopt);

// V_n of any supported scenario without building the codebook.
double closed_form_error(const Scenario& scenario, int n);

// Builds the closed-form outcome for any supported scenario.
QuantizationOutcome solve(const Scenario& scenario, int n);

// Limit of n^2 V_n for the scenario's family, when known.
std::optional<double> coefficient_target(const Scenario& scenario);

} // namespace quantacurve::closed_form
