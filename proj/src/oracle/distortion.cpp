#include <cmath>
#include <vector>

#include "cell_integrals.hpp"
#include "quantacurve/errors.hpp"
#include "quantacurve/oracle.hpp"

namespace quantacurve::oracle {

namespace {

// Exact integral of (x - p)^2 over [lo, hi].
double segment_cell_integral(double lo, double hi, double p) {
    const double u = hi - p;
    const double v = lo - p;
    return (u * u * u - v * v * v) / 3.0;
}

bool analytic_segment(const Support& support, const Codebook& codebook) {
    if (!std::holds_alternative<SegmentSupport>(support)) {
        return false;
    }
    for (const Point2& p : codebook.points) {
        if (p.y != 0.0) {
            return false;
        }
    }
    return true;
}

} // namespace

void OracleConfig::validate() const {
    if (grid_cells < 1000) {
        throw PreconditionError("oracle config: grid_cells must be >= 1000");
    }
    if (quad_panels < 16) {
        throw PreconditionError("oracle config: quad_panels must be >= 16");
    }
    if (!(conv_tol > 0.0)) {
        throw PreconditionError("oracle config: conv_tol must be > 0");
    }
    if (restarts < 1) {
        throw PreconditionError("oracle config: restarts must be >= 1");
    }
    if (max_iters < 1) {
        throw PreconditionError("oracle config: max_iters must be >= 1");
    }
}

double partition_distortion(const Support& support, const Codebook& codebook, const VoronoiPartition& partition,
                            int quad_panels, Exec exec) {
    const int n = codebook.n();
    const bool analytic = analytic_segment(support, codebook);
    const double a = analytic ? std::get<SegmentSupport>(support).a() : 0.0;
    std::vector<double> per_cell(n, 0.0);

    auto cell_value = [&](int i) {
        double v = 0.0;
        for (const ParamInterval& arc : partition.cells[i].arcs) {
            if (arc.hi <= arc.lo) {
                continue;
            }
            v += analytic ? segment_cell_integral(arc.lo, arc.hi, codebook.points[i].x - a)
                          : detail::cell_distortion(support, arc, codebook.points[i], quad_panels);
        }
        return v;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            per_cell[i] = cell_value(i);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            per_cell[i] = cell_value(i);
        }
    }
    // Fixed summation order keeps the result independent of the schedule.
    double total = 0.0;
    for (double v : per_cell) {
        total += v;
    }
    return total / total_length(support);
}

double distortion(const Support& support, const Codebook& codebook, const OracleConfig& config, Exec exec) {
    if (codebook.points.empty()) {
        throw PreconditionError("distortion: empty codebook");
    }
    const VoronoiPartition partition = voronoi_partition(support, codebook);
    return partition_distortion(support, codebook, partition, config.quad_panels, exec);
}

} // namespace quantacurve::oracle
