#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <omp.h>

#include "quantacurve/errors.hpp"
#include "quantacurve/oracle.hpp"
#include "quantacurve/oracle_kernels.hpp"

namespace quantacurve::oracle {

namespace kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this many rows a subproblem is not worth a task.
constexpr int kTaskGrain = 4096;

double cube(double x) { return x * x * x; }

struct RegionGrid {
    const Region& region;
    int first_free;
    int last_free;

    explicit RegionGrid(const Region& r)
        : region(r), first_free(r.left_open ? 0 : 1), last_free(r.right_open ? r.cells : r.cells - 1) {}

    // Offset from x0. Costs use offsets only, so congruent regions give
    // bitwise identical tables wherever they sit.
    double local(int i) const {
        const double len = region.x1 - region.x0;
        return i == region.cells ? len : len * (static_cast<double>(i) / region.cells);
    }
    double node(int i) const { return i == region.cells ? region.x1 : region.x0 + local(i); }
    // Integral over the gap between two consecutive codebook points.
    double gap_cost(int i, int j) const { return cube(local(j) - local(i)) / 12.0; }
    double start_cost(int i) const {
        const double d = cube(local(i));
        return region.left_open ? d / 3.0 : d / 12.0;
    }
    double end_cost(int i) const {
        const double d = cube(local(region.cells) - local(i));
        return region.right_open ? d / 3.0 : d / 12.0;
    }
};

void divide_and_conquer(const RegionGrid& grid, const std::vector<double>& prev, std::vector<double>& cur,
                        std::vector<int>& parent, int lo, int hi, int opt_lo, int opt_hi, bool spawn) {
    if (lo > hi) {
        return;
    }
    const int mid = lo + (hi - lo) / 2;
    double best = kInf;
    int arg = opt_lo;
    const int last = std::min(mid - 1, opt_hi);
    for (int k = opt_lo; k <= last; ++k) {
        const double v = prev[k] + grid.gap_cost(k, mid);
        if (v < best) {
            best = v;
            arg = k;
        }
    }
    cur[mid] = best;
    parent[mid] = arg;
    if (spawn && hi - lo > kTaskGrain) {
#pragma omp task default(shared)
        divide_and_conquer(grid, prev, cur, parent, lo, mid - 1, opt_lo, arg, spawn);
#pragma omp task default(shared)
        divide_and_conquer(grid, prev, cur, parent, mid + 1, hi, arg, opt_hi, spawn);
#pragma omp taskwait
    } else {
        divide_and_conquer(grid, prev, cur, parent, lo, mid - 1, opt_lo, arg, spawn);
        divide_and_conquer(grid, prev, cur, parent, mid + 1, hi, arg, opt_hi, spawn);
    }
}

void exhaustive_layer(const RegionGrid& grid, const std::vector<double>& prev, std::vector<double>& cur,
                      std::vector<int>& parent, int lo, int hi, int opt_lo) {
    for (int i = lo; i <= hi; ++i) {
        double best = kInf;
        int arg = opt_lo;
        for (int k = opt_lo; k < i; ++k) {
            const double v = prev[k] + grid.gap_cost(k, i);
            if (v < best) {
                best = v;
                arg = k;
            }
        }
        cur[i] = best;
        parent[i] = arg;
    }
}

RegionTable solve(const Region& region, int max_free, bool reference) {
    if (max_free < 0) {
        throw PreconditionError("solve_region: negative point count");
    }
    RegionTable table;
    table.cost.assign(max_free + 1, kInf);
    table.positions.assign(max_free + 1, {});
    const double len = region.x1 - region.x0;
    if (len <= 0.0 || region.cells <= 0) {
        table.cost[0] = 0.0;
        return table;
    }
    if (!(region.left_open && region.right_open)) {
        table.cost[0] = (region.left_open || region.right_open) ? cube(len) / 3.0 : cube(len) / 12.0;
    }

    const RegionGrid grid(region);
    const int capacity = std::max(0, grid.last_free - grid.first_free + 1);
    const int layers = std::min(max_free, capacity);
    if (layers == 0) {
        return table;
    }

    const int nodes = region.cells + 1;
    std::vector<std::vector<int>> parent(layers + 1, std::vector<int>(nodes, -1));
    std::vector<double> prev(nodes, kInf);
    std::vector<double> cur(nodes, kInf);

    auto finish_layer = [&](int f, const std::vector<double>& h) {
        double best = kInf;
        int arg = -1;
        for (int i = grid.first_free + f - 1; i <= grid.last_free; ++i) {
            const double v = h[i] + grid.end_cost(i);
            if (v < best) {
                best = v;
                arg = i;
            }
        }
        table.cost[f] = best;
        std::vector<double> pos(f);
        for (int j = f, i = arg; j >= 1; --j) {
            pos[j - 1] = grid.node(i);
            i = parent[j][i];
        }
        table.positions[f] = std::move(pos);
    };

    for (int i = grid.first_free; i <= grid.last_free; ++i) {
        prev[i] = grid.start_cost(i);
    }
    finish_layer(1, prev);

    const bool spawn = !reference && !omp_in_parallel() && omp_get_max_threads() > 1;
    for (int f = 2; f <= layers; ++f) {
        std::fill(cur.begin(), cur.end(), kInf);
        const int lo = grid.first_free + f - 1;
        const int opt_lo = grid.first_free + f - 2;
        if (reference) {
            exhaustive_layer(grid, prev, cur, parent[f], lo, grid.last_free, opt_lo);
        } else if (spawn) {
#pragma omp parallel
#pragma omp single
            divide_and_conquer(grid, prev, cur, parent[f], lo, grid.last_free, opt_lo, grid.last_free - 1, true);
        } else {
            divide_and_conquer(grid, prev, cur, parent[f], lo, grid.last_free, opt_lo, grid.last_free - 1, false);
        }
        finish_layer(f, cur);
        std::swap(prev, cur);
    }
    return table;
}

} // namespace

RegionTable solve_region(const Region& region, int max_free) { return solve(region, max_free, false); }

RegionTable solve_region_reference(const Region& region, int max_free) { return solve(region, max_free, true); }

} // namespace kernels

namespace {

Codebook to_codebook(const std::vector<double>& xs) {
    Codebook out;
    for (double x : xs) {
        out.points.push_back({x, 0.0});
    }
    return out;
}

} // namespace

QuantizationOutcome dp_conditional_1d(ParamInterval interval, std::span<const double> conditional, int n,
                                      const OracleConfig& config, std::span<const int> free_per_region) {
    config.validate();
    const SegmentSupport segment(interval.lo, interval.hi);
    std::vector<double> cond(conditional.begin(), conditional.end());
    std::sort(cond.begin(), cond.end());
    for (std::size_t i = 0; i < cond.size(); ++i) {
        if (cond[i] < interval.lo || cond[i] > interval.hi) {
            throw PreconditionError("dp_conditional_1d: conditional point outside the interval");
        }
        if (i > 0 && cond[i] == cond[i - 1]) {
            throw PreconditionError("dp_conditional_1d: duplicate conditional point");
        }
    }
    const int fixed = static_cast<int>(cond.size());
    if (n < std::max(1, fixed)) {
        throw PreconditionError("dp_conditional_1d: n must be >= max(1, card(conditional))");
    }
    const int free_total = n - fixed;

    std::vector<kernels::Region> regions;
    const double total = interval.hi - interval.lo;
    auto cells_for = [&](double len) {
        return len > 0.0 ? std::max(1, static_cast<int>(std::llround(config.grid_cells * len / total))) : 0;
    };
    if (cond.empty()) {
        regions.push_back({interval.lo, interval.hi, true, true, cells_for(total)});
    } else {
        regions.push_back({interval.lo, cond.front(), true, false, cells_for(cond.front() - interval.lo)});
        for (std::size_t t = 0; t + 1 < cond.size(); ++t) {
            regions.push_back({cond[t], cond[t + 1], false, false, cells_for(cond[t + 1] - cond[t])});
        }
        regions.push_back({cond.back(), interval.hi, false, true, cells_for(interval.hi - cond.back())});
    }
    const int region_count = static_cast<int>(regions.size());

    std::vector<int> limit(region_count, free_total);
    if (!free_per_region.empty()) {
        if (static_cast<int>(free_per_region.size()) != region_count) {
            throw PreconditionError("dp_conditional_1d: free_per_region needs one entry per region");
        }
        if (std::any_of(free_per_region.begin(), free_per_region.end(), [](int f) { return f < 0; }) ||
            std::accumulate(free_per_region.begin(), free_per_region.end(), 0) != free_total) {
            throw PreconditionError("dp_conditional_1d: free_per_region must be non-negative and sum to n - card");
        }
        std::copy(free_per_region.begin(), free_per_region.end(), limit.begin());
    }

    std::vector<kernels::RegionTable> tables(region_count);
    const bool many = region_count > 2;
#pragma omp parallel for schedule(dynamic) if (many)
    for (int t = 0; t < region_count; ++t) {
        tables[t] = kernels::solve_region(regions[t], limit[t]);
    }

    // Allocation of the free points over regions.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<int> take(region_count, 0);
    if (!free_per_region.empty()) {
        std::copy(free_per_region.begin(), free_per_region.end(), take.begin());
    } else {
        std::vector<std::vector<double>> best(region_count + 1, std::vector<double>(free_total + 1, kInf));
        std::vector<std::vector<int>> choice(region_count + 1, std::vector<int>(free_total + 1, 0));
        best[0][0] = 0.0;
        for (int t = 0; t < region_count; ++t) {
            for (int used = 0; used <= free_total; ++used) {
                if (best[t][used] == kInf) {
                    continue;
                }
                for (int f = 0; used + f <= free_total && f <= limit[t]; ++f) {
                    const double v = best[t][used] + tables[t].cost[f];
                    if (v < best[t + 1][used + f]) {
                        best[t + 1][used + f] = v;
                        choice[t + 1][used + f] = f;
                    }
                }
            }
        }
        for (int t = region_count, used = free_total; t >= 1; --t) {
            take[t - 1] = choice[t][used];
            used -= take[t - 1];
        }
    }

    std::vector<double> xs = cond;
    for (int t = 0; t < region_count; ++t) {
        if (!std::isfinite(tables[t].cost[take[t]])) {
            throw PreconditionError("dp_conditional_1d: grid too coarse for the requested point count");
        }
        xs.insert(xs.end(), tables[t].positions[take[t]].begin(), tables[t].positions[take[t]].end());
    }
    std::sort(xs.begin(), xs.end());

    Codebook codebook = to_codebook(xs);
    const Support support = segment;
    const double error = distortion(support, codebook, config, Exec::Serial);
    std::vector<Point2> cond_points;
    for (double c : cond) {
        cond_points.push_back({c, 0.0});
    }
    const Flavor flavor = cond.empty() ? Flavor::Unconstrained : Flavor::ConditionalUnconstrained;
    return {std::move(codebook), error, Scenario(support, std::move(cond_points), flavor), Provenance::Oracle, {}};
}

QuantizationOutcome polygon_dp(const PolygonSupport& support, int n, const OracleConfig& config,
                               std::span<const int> points_per_side) {
    const int m = support.m();
    if (n < m) {
        throw PreconditionError("polygon_dp: n must be >= m");
    }
    const UnrollCoeffs coeffs = polygon_unroll_coeffs(support);
    std::vector<int> regions;
    if (!points_per_side.empty()) {
        if (static_cast<int>(points_per_side.size()) != m) {
            throw PreconditionError("polygon_dp: points_per_side needs m entries");
        }
        regions.push_back(0);
        for (int nj : points_per_side) {
            if (nj < 2) {
                throw PreconditionError("polygon_dp: every side carries at least its two vertices");
            }
            regions.push_back(nj - 2);
        }
        regions.push_back(0);
    }
    // n points on the boundary are n + 1 points on the unrolled interval.
    const QuantizationOutcome unrolled =
        dp_conditional_1d({0.0, support.length()}, coeffs.c, n + 1, config, regions);

    Codebook codebook;
    for (int i = 0; i < n; ++i) {
        codebook.points.push_back(polygon_unroll_inv(support, unrolled.codebook.points[i].x).point);
    }
    const double error = distortion(support, codebook, config);
    return {std::move(codebook), error, Scenario::polygon_vertices(support), Provenance::Oracle, {}};
}

} // namespace quantacurve::oracle
