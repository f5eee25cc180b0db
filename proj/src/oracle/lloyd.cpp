#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "cell_integrals.hpp"
#include "quantacurve/errors.hpp"
#include "quantacurve/oracle.hpp"
#include "rng.hpp"

namespace quantacurve::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Point2 random_point(const Support& support, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return point_at(support, unit(rng) * total_length(support));
}

Codebook sorted_by_parameter(const Support& support, Codebook codebook) {
    std::stable_sort(codebook.points.begin(), codebook.points.end(), [&](const Point2& p, const Point2& q) {
        return parameter_of(support, p) < parameter_of(support, q);
    });
    return codebook;
}

detail::CellMoments moments_of(const Support& support, const VoronoiCell& cell, int panels) {
    detail::CellMoments total;
    for (const ParamInterval& arc : cell.arcs) {
        if (arc.hi <= arc.lo) {
            continue;
        }
        const detail::CellMoments m = detail::cell_moments(support, arc, panels);
        total.mass += m.mass;
        total.mx += m.mx;
        total.my += m.my;
    }
    return total;
}

// Angle on the circle minimising the cell distortion. With the cell's first
// moment M fixed, the distortion as a function of the angle phi is
// const - 2 r (Mx cos phi + My sin phi); its stationary point inside the
// cell's angular range is located by a bracketing root solve.
double best_angle_on_circle(double r, const detail::CellMoments& m, const VoronoiCell& cell) {
    const ParamInterval arc = cell.arcs.front();
    double lo = arc.lo / r;
    double hi = arc.hi / r;
    if (cell.arcs.size() == 1 && hi - lo < kTwoPi) {
        auto slope = [&](double phi) { return 2.0 * r * (m.mx * std::sin(phi) - m.my * std::cos(phi)); };
        const double f_lo = slope(lo);
        const double f_hi = slope(hi);
        if (f_lo < 0.0 && f_hi > 0.0) {
            std::uintmax_t max_iter = 200;
            const auto bracket = boost::math::tools::toms748_solve(
                slope, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(48), max_iter);
            return 0.5 * (bracket.first + bracket.second);
        }
    }
    return std::atan2(m.my, m.mx);
}

template <class Update>
LloydRun descend(const Support& support, Codebook start, const OracleConfig& config, Update update) {
    LloydRun run;
    run.codebook = std::move(start);
    VoronoiPartition partition;
    auto evaluate = [&] {
        partition = voronoi_partition(support, run.codebook);
        run.error = partition_distortion(support, run.codebook, partition, config.quad_panels, Exec::Serial);
        run.trace.push_back(run.error);
    };
    evaluate();
    double previous = run.error;
    for (int it = 1; it <= config.max_iters; ++it) {
        update(partition, run);
        evaluate();
        run.iterations = it;
        if (std::abs(previous - run.error) <= config.conv_tol * run.error) {
            run.converged = true;
            break;
        }
        previous = run.error;
    }
    return run;
}

std::uint64_t reseed_stream(const Codebook& start) {
    // Streams for reseeding empty cells, distinct from the restart streams.
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const Point2& p : start.points) {
        h ^= std::hash<double>{}(p.x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<double>{}(p.y) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

template <class RunFn>
QuantizationOutcome best_of_restarts(const Support& support, const Scenario& scenario,
                                     const OracleConfig& config, RunFn run_fn) {
    std::vector<LloydRun> runs(config.restarts);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < config.restarts; ++k) {
        try {
            auto rng = detail::make_stream(config.seed, static_cast<std::uint64_t>(k));
            runs[k] = run_fn(rng);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k) {
        if (runs[k].error < runs[best].error) {
            best = k;
        }
    }
    QuantizationOutcome out{sorted_by_parameter(support, runs[best].codebook), runs[best].error, scenario,
                            Provenance::Oracle, {}};
    out.metadata.iterations = runs[best].iterations;
    out.metadata.restarts = config.restarts;
    out.metadata.converged = runs[best].converged;
    return out;
}

} // namespace

LloydRun lloyd_run_unconstrained(const Support& support, Codebook start, const OracleConfig& config) {
    auto rng = detail::make_stream(config.seed ^ reseed_stream(start), 0);
    return descend(support, std::move(start), config, [&](const VoronoiPartition& partition, LloydRun& run) {
        for (int i = 0; i < run.codebook.n(); ++i) {
            const detail::CellMoments m = moments_of(support, partition.cells[i], config.quad_panels);
            if (m.mass <= 0.0) {
                run.codebook.points[i] = random_point(support, rng);
                ++run.reseeds;
                continue;
            }
            run.codebook.points[i] = {m.mx / m.mass, m.my / m.mass};
        }
    });
}

LloydRun lloyd_run_constrained_circle(const CircleSupport& support, Codebook start, const OracleConfig& config) {
    const Support curve = support;
    const double r = support.r();
    auto rng = detail::make_stream(config.seed ^ reseed_stream(start), 0);
    return descend(curve, std::move(start), config, [&](const VoronoiPartition& partition, LloydRun& run) {
        // Index 0 is the conditional point and never moves.
        for (int i = 1; i < run.codebook.n(); ++i) {
            const VoronoiCell& cell = partition.cells[i];
            const detail::CellMoments m = moments_of(curve, cell, config.quad_panels);
            if (m.mass <= 0.0) {
                run.codebook.points[i] = random_point(curve, rng);
                ++run.reseeds;
                continue;
            }
            const double phi = best_angle_on_circle(r, m, cell);
            run.codebook.points[i] = {r * std::cos(phi), r * std::sin(phi)};
        }
    });
}

QuantizationOutcome lloyd_unconstrained(const Support& support, int n, const OracleConfig& config) {
    config.validate();
    if (n < 1) {
        throw PreconditionError("lloyd_unconstrained: n must be >= 1");
    }
    const Scenario scenario(support, {}, Flavor::Unconstrained);
    return best_of_restarts(support, scenario, config, [&](std::mt19937_64& rng) {
        Codebook start;
        for (int i = 0; i < n; ++i) {
            start.points.push_back(random_point(support, rng));
        }
        return lloyd_run_unconstrained(support, std::move(start), config);
    });
}

QuantizationOutcome lloyd_constrained_circle(const CircleSupport& support, int n, const OracleConfig& config) {
    config.validate();
    if (n < 1) {
        throw PreconditionError("lloyd_constrained_circle: n must be >= 1");
    }
    const Support curve = support;
    const Scenario scenario = Scenario::circle_constrained(support);
    return best_of_restarts(curve, scenario, config, [&](std::mt19937_64& rng) {
        Codebook start;
        start.points.push_back({support.r(), 0.0});
        for (int i = 1; i < n; ++i) {
            start.points.push_back(random_point(curve, rng));
        }
        return lloyd_run_constrained_circle(support, std::move(start), config);
    });
}

} // namespace quantacurve::oracle
