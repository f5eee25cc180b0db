#pragma once

#include <span>
#include <string>
#include <vector>

#include "quantacurve/curve_supports.hpp"

namespace quantacurve {

enum class Flavor { ConditionalUnconstrained, ConditionalConstrained, Unconstrained };
enum class Provenance { ClosedForm, Oracle };

// Conditional sets a segment may carry in the closed forms.
enum class EndpointSet { Left, Right, Both };

std::string to_string(Flavor flavor);
std::string to_string(Provenance provenance);
std::string to_string(EndpointSet set);

// A quantization problem: the support, the points every codebook must
// contain, and whether free points are restricted to the support curve.
class Scenario {
public:
    Scenario(Support support, std::vector<Point2> conditional, Flavor flavor);

    static Scenario segment_endpoints(const SegmentSupport& support, EndpointSet set);
    static Scenario circle_constrained(const CircleSupport& support);
    static Scenario circle_unconstrained(const CircleSupport& support);
    static Scenario polygon_vertices(const PolygonSupport& support);

    const Support& support() const { return support_; }
    const std::vector<Point2>& conditional() const { return conditional_; }
    Flavor flavor() const { return flavor_; }
    bool constrained() const { return flavor_ == Flavor::ConditionalConstrained; }

    Scenario scaled(double lambda) const;

private:
    Support support_;
    std::vector<Point2> conditional_;
    Flavor flavor_;
};

struct Codebook {
    std::vector<Point2> points;

    int n() const { return static_cast<int>(points.size()); }
};

// True when every point of `required` appears in the codebook within `tol`.
bool contains_all(const Codebook& codebook, std::span<const Point2> required, double tol = 1e-9);

// Bookkeeping for iterative oracles; closed forms leave the defaults.
struct OutcomeMetadata {
    int iterations = 0;
    int restarts = 0;
    bool converged = true;
};

struct QuantizationOutcome {
    Codebook codebook;
    double error = 0.0;
    Scenario scenario;
    Provenance provenance = Provenance::ClosedForm;
    OutcomeMetadata metadata{};
};

} // namespace quantacurve
