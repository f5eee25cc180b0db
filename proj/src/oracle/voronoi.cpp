#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "quantacurve/errors.hpp"
#include "quantacurve/oracle.hpp"

namespace quantacurve::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTol = 1e-12;

int nearest_index(Point2 x, const std::vector<Point2>& generators) {
    int best = 0;
    double best_d = rho(x, generators[0]);
    for (int i = 1; i < static_cast<int>(generators.size()); ++i) {
        const double d = rho(x, generators[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

void require_distinct(const Codebook& codebook) {
    const auto& pts = codebook.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i] == pts[j]) {
                throw PreconditionError("Voronoi partition: coincident generators");
            }
        }
    }
}

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) {
        t += kTwoPi;
    }
    return t;
}

} // namespace

double VoronoiCell::length() const {
    double total = 0.0;
    for (const ParamInterval& arc : arcs) {
        total += std::max(0.0, arc.length());
    }
    return total;
}

double VoronoiPartition::total_measure(const Support& support) const {
    double total = 0.0;
    for (const VoronoiCell& cell : cells) {
        total += cell.length();
    }
    return total / total_length(support);
}

VoronoiPartition voronoi_1d(ParamInterval interval, std::span<const double> points) {
    if (points.empty()) {
        throw PreconditionError("voronoi_1d: no generators");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] < interval.lo || points[i] > interval.hi) {
            throw PreconditionError("voronoi_1d: generator outside the interval");
        }
        if (i > 0 && points[i] == points[i - 1]) {
            throw PreconditionError("voronoi_1d: duplicate generator");
        }
        if (i > 0 && points[i] < points[i - 1]) {
            throw PreconditionError("voronoi_1d: generators must be sorted");
        }
    }
    VoronoiPartition out;
    double lo = interval.lo;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double hi = i + 1 < points.size() ? 0.5 * (points[i] + points[i + 1]) : interval.hi;
        out.cells.push_back({{{lo, hi}}});
        lo = hi;
    }
    return out;
}

VoronoiPartition voronoi_on_circle(const CircleSupport& support, const Codebook& codebook) {
    require_distinct(codebook);
    const auto& gens = codebook.points;
    const int n = codebook.n();
    const double r = support.r();
    if (n == 0) {
        throw PreconditionError("voronoi_on_circle: no generators");
    }
    VoronoiPartition out;
    out.cells.resize(n);
    if (n == 1) {
        out.cells[0].arcs = {{0.0, support.length()}};
        return out;
    }

    std::vector<double> psi(n);
    for (int i = 0; i < n; ++i) {
        psi[i] = normalize_angle(std::atan2(gens[i].y, gens[i].x));
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return psi[a] < psi[b]; });

    auto on_circle = [&](double theta) { return Point2{r * std::cos(theta), r * std::sin(theta)}; };

    // boundary[k] separates order[k] from order[k + 1].
    std::vector<double> boundary(n);
    bool bracketed = true;
    for (int k = 0; k < n && bracketed; ++k) {
        const Point2 gi = gens[order[k]];
        const Point2 gj = gens[order[(k + 1) % n]];
        double lo = psi[order[k]];
        double hi = psi[order[(k + 1) % n]] + (k + 1 == n ? kTwoPi : 0.0);
        auto gap = [&](double theta) { return rho(on_circle(theta), gi) - rho(on_circle(theta), gj); };
        if (!(hi > lo) || gap(lo) > 0.0 || gap(hi) < 0.0) {
            bracketed = false;
            break;
        }
        while (hi - lo > kAngleTol) {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) <= 0.0 ? lo : hi) = mid;
        }
        boundary[k] = 0.5 * (lo + hi);
    }

    if (bracketed) {
        for (int k = 0; k < n; ++k) {
            double lo = k == 0 ? boundary[n - 1] - kTwoPi : boundary[k - 1];
            double hi = boundary[k];
            if (!(hi > lo)) {
                bracketed = false;
                break;
            }
            const int owner = order[k];
            if (nearest_index(on_circle(0.5 * (lo + hi)), gens) != owner) {
                bracketed = false;
                break;
            }
            const double shift = lo < 0.0 ? kTwoPi : 0.0;
            out.cells[owner].arcs = {{r * (lo + shift), r * (hi + shift)}};
        }
    }
    if (!bracketed) {
        // Some generator does not own the arc around its own direction.
        return voronoi_on_curve(support, codebook);
    }
    return out;
}

VoronoiPartition voronoi_on_curve(const Support& support, const Codebook& codebook) {
    require_distinct(codebook);
    const auto& gens = codebook.points;
    const int n = codebook.n();
    if (n == 0) {
        throw PreconditionError("voronoi_on_curve: no generators");
    }
    const double total = total_length(support);
    const bool closed = is_closed(support);
    const int samples = std::max(2048, 64 * n);
    const double step = total / samples;

    auto owner_at = [&](double s) { return nearest_index(point_at(support, s), gens); };

    struct Run {
        double lo;
        double hi;
        int owner;
    };
    std::vector<Run> runs;
    int current = owner_at(0.0);
    double run_lo = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double s0 = k * step;
        const double s1 = k + 1 == samples ? total : (k + 1) * step;
        const int next = owner_at(s1);
        if (next == current) {
            continue;
        }
        double lo = s0;
        double hi = s1;
        while (hi - lo > kAngleTol * std::max(1.0, total)) {
            const double mid = 0.5 * (lo + hi);
            (owner_at(mid) == current ? lo : hi) = mid;
        }
        const double cut = 0.5 * (lo + hi);
        runs.push_back({run_lo, cut, current});
        run_lo = cut;
        current = next;
    }
    runs.push_back({run_lo, total, current});

    if (closed && runs.size() > 1 && runs.front().owner == runs.back().owner) {
        runs.front().lo = runs.back().lo;
        runs.front().hi += total;
        runs.pop_back();
    }

    VoronoiPartition out;
    out.cells.resize(n);
    for (const Run& run : runs) {
        out.cells[run.owner].arcs.push_back({run.lo, run.hi});
    }
    return out;
}

VoronoiPartition voronoi_partition(const Support& support, const Codebook& codebook) {
    if (const auto* seg = std::get_if<SegmentSupport>(&support)) {
        const bool on_line = std::all_of(codebook.points.begin(), codebook.points.end(),
                                         [](const Point2& p) { return p.y == 0.0; });
        if (on_line) {
            const int n = codebook.n();
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return codebook.points[a].x < codebook.points[b].x; });
            std::vector<double> xs;
            const bool inside = std::all_of(codebook.points.begin(), codebook.points.end(), [&](const Point2& p) {
                return p.x >= seg->a() && p.x <= seg->b();
            });
            if (inside) {
                for (int i : order) {
                    xs.push_back(codebook.points[i].x - seg->a());
                }
                const VoronoiPartition sorted = voronoi_1d({0.0, seg->length()}, xs);
                VoronoiPartition out;
                out.cells.resize(n);
                for (int k = 0; k < n; ++k) {
                    out.cells[order[k]] = sorted.cells[k];
                }
                return out;
            }
        }
        return voronoi_on_curve(support, codebook);
    }
    if (const auto* circle = std::get_if<CircleSupport>(&support)) {
        return voronoi_on_circle(*circle, codebook);
    }
    return voronoi_on_curve(support, codebook);
}

} // namespace quantacurve::oracle
