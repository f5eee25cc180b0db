#pragma once

#include <vector>

// Low-level DP kernel shared by the oracle, its tests and the benchmarks.
namespace quantacurve::oracle::kernels {

// One region of a conditional 1-D problem. A closed end is a conditional
// point; an open end is an endpoint of the support that need not be a
// codebook point.
struct Region {
    double x0 = 0.0;
    double x1 = 0.0;
    bool left_open = false;
    bool right_open = false;
    int cells = 0;  // uniform grid with cells + 1 nodes, both ends included
};

// cost[f] is the optimal unnormalised distortion integral over the region
// with f free points, positions[f] their grid positions (ascending).
// Unreachable counts have infinite cost.
struct RegionTable {
    std::vector<double> cost;
    std::vector<std::vector<double>> positions;
};

// Divide-and-conquer layered DP; parallel over subproblems with OpenMP tasks.
RegionTable solve_region(const Region& region, int max_free);
// Exhaustive O(max_free * cells^2) serial reference.
RegionTable solve_region_reference(const Region& region, int max_free);

} // namespace quantacurve::oracle::kernels
