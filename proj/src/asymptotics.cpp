#include "quantacurve/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "quantacurve/errors.hpp"

namespace quantacurve::asymptotics {

namespace {

void require_entries(const ErrorSequence& seq, std::size_t minimum, const char* who) {
    if (seq.entries.size() < minimum) {
        throw PreconditionError(std::string(who) + ": at least " + std::to_string(minimum) + " entries required");
    }
    if (!(seq.v_infinity >= 0.0)) {
        throw PreconditionError(std::string(who) + ": v_infinity must be >= 0");
    }
    for (std::size_t i = 0; i < seq.entries.size(); ++i) {
        const ErrorSample& e = seq.entries[i];
        if (!(e.v > seq.v_infinity)) {
            throw FitError(std::string(who) + ": every V_n must exceed v_infinity");
        }
        if (i > 0 && e.n <= seq.entries[i - 1].n) {
            throw FitError(std::string(who) + ": n must be strictly increasing");
        }
        if (i > 0 && e.v >= seq.entries[i - 1].v) {
            throw FitError(std::string(who) + ": V_n must be strictly decreasing");
        }
    }
}

std::span<const ErrorSample> upper_half(const ErrorSequence& seq) {
    const std::size_t count = (seq.entries.size() + 1) / 2;
    return std::span<const ErrorSample>(seq.entries).last(count);
}

struct PowerFit {
    double v_inf = 0.0;
    double amplitude = 0.0;
    double rel_rms = std::numeric_limits<double>::infinity();
};

// Weighted linear least squares for (V_inf, A) at a fixed exponent.
PowerFit fit_fixed_exponent(std::span<const ErrorSample> tail, double p) {
    const Eigen::Index rows = static_cast<Eigen::Index>(tail.size());
    Eigen::MatrixXd design(rows, 2);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double w = 1.0 / tail[i].v;
        design(i, 0) = w;
        design(i, 1) = std::pow(static_cast<double>(tail[i].n), -p) * w;
        rhs(i) = 1.0;
    }
    const Eigen::Vector2d sol = design.colPivHouseholderQr().solve(rhs);
    PowerFit fit{sol(0), sol(1), 0.0};
    fit.rel_rms = std::sqrt((design * sol - rhs).squaredNorm() / static_cast<double>(rows));
    return fit;
}

} // namespace

std::vector<int> geometric_grid(int n_min, int n_max, int points) {
    if (n_min < 1 || n_max < n_min || points < 1) {
        throw PreconditionError("geometric_grid: need 1 <= n_min <= n_max and points >= 1");
    }
    std::vector<int> out;
    if (points == 1) {
        return {n_min};
    }
    const double ratio = std::pow(static_cast<double>(n_max) / n_min, 1.0 / (points - 1));
    for (int i = 0; i < points; ++i) {
        const int n = i + 1 == points ? n_max : static_cast<int>(std::llround(n_min * std::pow(ratio, i)));
        if (out.empty() || n > out.back()) {
            out.push_back(n);
        }
    }
    return out;
}

ErrorSequence make_sequence(std::span<const int> ns, const std::function<double(int)>& v_of_n, double v_infinity) {
    ErrorSequence seq;
    seq.v_infinity = v_infinity;
    for (int n : ns) {
        seq.entries.push_back({n, v_of_n(n)});
    }
    return seq;
}

double dimension_estimate(const ErrorSequence& seq) {
    require_entries(seq, 5, "dimension_estimate");
    const Eigen::Index rows = static_cast<Eigen::Index>(seq.entries.size());
    Eigen::MatrixXd design(rows, 2);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = std::log(static_cast<double>(seq.entries[i].n));
        rhs(i) = std::log(seq.entries[i].v - seq.v_infinity);
    }
    const Eigen::Vector2d sol = design.colPivHouseholderQr().solve(rhs);
    const double slope = sol(1);
    if (!(slope < 0.0) || !std::isfinite(slope)) {
        throw FitError("dimension_estimate: error sequence does not decay");
    }
    return -2.0 / slope;
}

std::vector<double> pointwise_dimension_ratios(const ErrorSequence& seq) {
    std::vector<double> out;
    for (const ErrorSample& e : seq.entries) {
        out.push_back(2.0 * std::log(static_cast<double>(e.n)) / -std::log(e.v - seq.v_infinity));
    }
    return out;
}

CoefficientEstimate coefficient_estimate(const ErrorSequence& seq) {
    require_entries(seq, 5, "coefficient_estimate");
    const auto window = upper_half(seq);
    const Eigen::Index rows = static_cast<Eigen::Index>(window.size());
    Eigen::MatrixXd design(rows, 3);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double n = window[i].n;
        design(i, 0) = 1.0;
        design(i, 1) = 1.0 / n;
        design(i, 2) = 1.0 / (n * n);
        rhs(i) = n * n * (window[i].v - seq.v_infinity);
    }
    const Eigen::Vector3d sol = design.colPivHouseholderQr().solve(rhs);
    if (!sol.allFinite()) {
        throw FitError("coefficient_estimate: degenerate fit");
    }
    CoefficientEstimate out;
    out.value = sol(0);
    out.ci_halfwidth = (design * sol - rhs).cwiseAbs().maxCoeff();
    out.model = "n^2 (V_n - V_inf) = Q + c/n + d/n^2, least squares over the " + std::to_string(rows) +
                " largest n";
    return out;
}

double v_infinity_estimate(const ErrorSequence& seq) {
    require_entries(seq, 8, "v_infinity_estimate");
    const auto tail = upper_half(seq);

    // Coarse scan for the exponent, then Brent refinement around the best.
    constexpr double kPMin = 0.05;
    constexpr double kPMax = 8.0;
    constexpr int kScan = 160;
    double best_p = kPMin;
    double best_rms = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kScan; ++i) {
        const double p = kPMin + (kPMax - kPMin) * i / kScan;
        const double rms = fit_fixed_exponent(tail, p).rel_rms;
        if (rms < best_rms) {
            best_rms = rms;
            best_p = p;
        }
    }
    const double step = (kPMax - kPMin) / kScan;
    const auto refined = boost::math::tools::brent_find_minima(
        [&](double p) { return fit_fixed_exponent(tail, p).rel_rms; }, std::max(kPMin, best_p - step),
        std::min(kPMax, best_p + step), 40);
    const PowerFit fit = fit_fixed_exponent(tail, refined.first);

    constexpr double kMaxRelRms = 1e-2;
    if (!std::isfinite(fit.v_inf) || !(fit.rel_rms <= kMaxRelRms)) {
        throw FitError("v_infinity_estimate: power-law tail fit failed (relative rms " +
                       std::to_string(fit.rel_rms) + ")");
    }
    return fit.v_inf;
}

} // namespace quantacurve::asymptotics
