#pragma once

#include <algorithm>
#include <vector>

#include "quantacurve/curve_supports.hpp"

namespace quantacurve::oracle::detail {

// Composite Simpson rule with an even number of subintervals.
template <class F>
double composite_simpson(const F& f, double a, double b, int panels) {
    if (panels % 2 != 0) {
        ++panels;
    }
    const double h = (b - a) / panels;
    double odd = 0.0;
    double even = 0.0;
    for (int i = 1; i < panels; ++i) {
        const double v = f(a + i * h);
        (i % 2 != 0 ? odd : even) += v;
    }
    return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

// Splits [lo, hi] at the support's non-smooth points and at the base point
// of closed curves so every piece has a smooth integrand.
inline std::vector<ParamInterval> smooth_pieces(const Support& support, ParamInterval arc) {
    std::vector<double> cuts;
    const double total = total_length(support);
    std::vector<double> breaks = smooth_breaks(support);
    if (is_closed(support)) {
        breaks.push_back(0.0);
        const std::size_t base = breaks.size();
        for (std::size_t i = 0; i < base; ++i) {
            breaks.push_back(breaks[i] + total);
        }
    }
    for (double b : breaks) {
        if (b > arc.lo && b < arc.hi) {
            cuts.push_back(b);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<ParamInterval> out;
    double lo = arc.lo;
    for (double c : cuts) {
        out.push_back({lo, c});
        lo = c;
    }
    out.push_back({lo, arc.hi});
    return out;
}

struct CellMoments {
    double mass = 0.0;    // arc length
    double mx = 0.0;      // integral of x ds
    double my = 0.0;      // integral of y ds
};

inline CellMoments cell_moments(const Support& support, ParamInterval arc, int panels) {
    CellMoments out;
    for (const ParamInterval& piece : smooth_pieces(support, arc)) {
        if (piece.hi <= piece.lo) {
            continue;
        }
        out.mass += piece.hi - piece.lo;
        out.mx += composite_simpson([&](double s) { return point_at(support, s).x; }, piece.lo, piece.hi, panels);
        out.my += composite_simpson([&](double s) { return point_at(support, s).y; }, piece.lo, piece.hi, panels);
    }
    return out;
}

inline double cell_distortion(const Support& support, ParamInterval arc, Point2 generator, int panels) {
    double out = 0.0;
    for (const ParamInterval& piece : smooth_pieces(support, arc)) {
        if (piece.hi <= piece.lo) {
            continue;
        }
        out += composite_simpson([&](double s) { return rho(point_at(support, s), generator); }, piece.lo,
                                 piece.hi, panels);
    }
    return out;
}

} // namespace quantacurve::oracle::detail
