#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "quantacurve/curve_supports.hpp"
#include "quantacurve/scenario.hpp"

// Numerical machinery that recomputes optimal codebooks and their errors
// without any closed-form knowledge: quadrature, Voronoi cells on curves,
// Lloyd iteration and grid dynamic programming.
namespace quantacurve::oracle {

struct OracleConfig {
    int grid_cells = 100000;  // DP candidate positions over the whole interval
    int quad_panels = 256;    // Simpson subintervals per smooth piece of a cell
    int max_iters = 20000;    // Lloyd
    double conv_tol = 1e-13;  // relative change of V between Lloyd sweeps
    std::uint64_t seed = 20240601;
    int restarts = 8;

    void validate() const;
};

enum class Exec { Parallel, Serial };

struct VoronoiCell {
    // Usually a single arc; wrapped arcs have hi > total length.
    std::vector<ParamInterval> arcs;

    double length() const;
};

// cells[i] belongs to codebook point i, in the codebook's own order.
struct VoronoiPartition {
    std::vector<VoronoiCell> cells;

    double total_measure(const Support& support) const;
};

// Midpoint partition of a real interval; points must be sorted and distinct.
VoronoiPartition voronoi_1d(ParamInterval interval, std::span<const double> points);
// Generators may lie off the circle; boundaries found by bisection in angle.
VoronoiPartition voronoi_on_circle(const CircleSupport& support, const Codebook& codebook);
// Sampling + bisection partition valid for any support and any generators.
VoronoiPartition voronoi_on_curve(const Support& support, const Codebook& codebook);
// Picks the specialised routine for the support.
VoronoiPartition voronoi_partition(const Support& support, const Codebook& codebook);

double distortion(const Support& support, const Codebook& codebook, const OracleConfig& config = {},
                  Exec exec = Exec::Parallel);

// Distortion of a codebook whose partition is already known.
double partition_distortion(const Support& support, const Codebook& codebook,
                            const VoronoiPartition& partition, int quad_panels,
                            Exec exec = Exec::Parallel);

struct LloydRun {
    Codebook codebook;
    double error = 0.0;
    int iterations = 0;
    bool converged = false;
    int reseeds = 0;
    std::vector<double> trace;  // V of every visited codebook
};

// Single Lloyd descent from a given start. Unconstrained: centroids in the
// plane. Constrained circle: codebook.points[0] is held fixed and every
// other point is moved to the best position on the circle.
LloydRun lloyd_run_unconstrained(const Support& support, Codebook start, const OracleConfig& config);
LloydRun lloyd_run_constrained_circle(const CircleSupport& support, Codebook start,
                                      const OracleConfig& config);

QuantizationOutcome lloyd_unconstrained(const Support& support, int n, const OracleConfig& config = {});
QuantizationOutcome lloyd_constrained_circle(const CircleSupport& support, int n,
                                             const OracleConfig& config = {});

// Best grid-restricted placement of n points on [interval.lo, interval.hi]
// containing the conditional points. The conditional points split the
// interval into regions (left end, gaps, right end); `free_per_region`, if
// given, fixes how many free points each of those conditional.size() + 1
// regions receives. The reported error is evaluated exactly at the chosen
// positions.
QuantizationOutcome dp_conditional_1d(ParamInterval interval, std::span<const double> conditional, int n,
                                      const OracleConfig& config = {},
                                      std::span<const int> free_per_region = {});

// Polygon with all vertices conditional, solved by DP on the unrolled
// boundary. `points_per_side`, if given, fixes the unrolled count n_j of
// side j (endpoints included). The error is the plane quadrature distortion.
QuantizationOutcome polygon_dp(const PolygonSupport& support, int n, const OracleConfig& config = {},
                               std::span<const int> points_per_side = {});

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

McEstimate mc_distortion(const Support& support, const Codebook& codebook, long samples,
                         std::uint64_t seed, Exec exec = Exec::Parallel);

} // namespace quantacurve::oracle
