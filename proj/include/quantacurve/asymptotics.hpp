#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

// Quantization dimension and coefficient estimated from error sequences.
// The distortion exponent is fixed at 2 throughout.
namespace quantacurve::asymptotics {

struct ErrorSample {
    int n = 0;
    double v = 0.0;
};

// Ordered (n, V_n) pairs; n strictly increasing, V_n strictly decreasing
// and above v_infinity.
struct ErrorSequence {
    std::vector<ErrorSample> entries;
    double v_infinity = 0.0;
};

struct CoefficientEstimate {
    double value = 0.0;
    double ci_halfwidth = 0.0;  // largest absolute fit residual in the window
    std::string model;
};

// Roughly geometric grid of distinct integers from n_min to n_max.
std::vector<int> geometric_grid(int n_min, int n_max, int points);

ErrorSequence make_sequence(std::span<const int> ns, const std::function<double(int)>& v_of_n,
                            double v_infinity = 0.0);

// -2 / slope of log(V_n - V_inf) against log n.
double dimension_estimate(const ErrorSequence& seq);
// 2 log n / -log(V_n - V_inf) for every entry.
std::vector<double> pointwise_dimension_ratios(const ErrorSequence& seq);

// Fits n^2 (V_n - V_inf) = Q + c/n + d/n^2 over the largest-n half.
CoefficientEstimate coefficient_estimate(const ErrorSequence& seq);

// Fits V_n = V_inf + A n^-p on the largest-n half, relative residuals.
double v_infinity_estimate(const ErrorSequence& seq);

} // namespace quantacurve::asymptotics
