#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace classlim::numeric {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
};

// Adaptive Gauss-Kronrod (G7/K15) integration of f over the finite interval [a, b].
// Throws QuadratureError if the relative tolerance cannot be met within the
// subdivision budget.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           double rel_tol = 1e-10,
                           int max_intervals = 4000);

// Golden-section maximisation of a unimodal f on [a, b]; returns (argmax, max).
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b, double x_tol = 1e-6);

// Standard normal CDF.
double normal_cdf(double x);

// Weighted linear least squares of y on (1, x): y ~ intercept + slope * x.
// weights are 1/sigma^2. Returns coefficients, their covariance, and the
// residual diagnostics. With unit weights this is plain OLS and the covariance
// uses the usual RSS/(n-2) variance estimate; with declared sigmas the
// covariance is (X^T W X)^-1 scaled by the reduced chi-square when that
// exceeds one (underdispersion is not rewarded).
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double cov00 = 0.0; // var(intercept)
    double cov01 = 0.0;
    double cov11 = 0.0; // var(slope)
    double rss = 0.0;           // weighted residual sum of squares
    double residual_rms = 0.0;  // unweighted RMS residual
    int n = 0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& weights, bool sigmas_declared);

} // namespace classlim::numeric
