#pragma once

#include "classlim/classifier.hpp"
#include "classlim/confusion.hpp"
#include "classlim/dataset.hpp"
#include "classlim/knn.hpp"

#include <optional>
#include <string>
#include <vector>

namespace classlim {

struct SweepPoint {
    double f1 = 0; // achieved class-1 fraction of the subsample
    ConfusionCounts counts;
    RateSummary rates;
    DivergenceEstimate divergence;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<std::string> warnings; // skipped grid values etc.
};

// For each grid value: subsample to the target fraction (sub-seed = seed +
// grid index), cross-validate the classifier, extract rates, and run the kNN
// estimator on the same subsample.
SweepResult sweep(const DatasetTable& dataset, const std::vector<double>& f1_grid,
                  const ClassifierSpec& classifier, const EstimatorConfig& estimator,
                  std::uint64_t seed);

// The default grid: 0.05 to 0.95 in steps of 0.05, plus the native fraction.
std::vector<double> default_f1_grid(double native_f1);

enum class FitWeighting {
    none,   // ordinary least squares
    counts, // sigma(rate) = log2(e)/sqrt(n_leak) from the implied leak count
};

// Linear leakage-rate model fitted to a sweep:
//   K12 = delta1 + (d21 - delta1) f1      (class-1 leak line)
//   K21 = d12 - (d12 - delta2) f1         (class-2 leak line)
// with 0 <= delta1 <= d21 and 0 <= delta2 <= d12 enforced.
struct FitResult {
    double delta1 = 0, d21_fit = 0, delta2 = 0, d12_fit = 0;
    double se_delta1 = 0, se_d21 = 0, se_delta2 = 0, se_d12 = 0;
    double f_b = 0;      // balance point, quadratic approximation
    double f_cross = 0;  // exact crossing of the two fitted lines (NaN if none)
    bool no_crossing = false;
    double t_r = 0;      // d12_fit / (d12_fit + d21_fit)
    double residual_rms = 0;
    int n_points12 = 0, n_points21 = 0;
    FitWeighting weighting = FitWeighting::none;
    bool anchored = false;
};

// Optional anchors are kNN estimates entered as pseudo-points at the ends:
// k21(f1 = 0) = cdi12 and k12(f1 = 1) = cdi21. Capped rate points are
// excluded. Throws InsufficientDataError with fewer than 3 usable sweep
// points per line.
FitResult fit_leakage_model(const std::vector<SweepPoint>& points,
                            const std::optional<std::pair<double, double>>& anchors,
                            FitWeighting weighting = FitWeighting::none);

// Balance point per the quadratic approximation
//   f_B = d12/(d12+d21) [1 + (delta1+delta2)/(d12+d21) - delta1/d12].
double balance_point(const FitResult& fit);

// Predicted kappa at each grid fraction from the fitted leakage lines.
std::vector<std::pair<double, double>> predict_kappa_curve(
    const FitResult& fit, const std::vector<double>& f1_grid);

enum class Verdict { at_limit, below_limit, above_limit_check_estimator, no_verdict };

std::string to_string(Verdict verdict);

struct VerdictReport {
    Verdict verdict = Verdict::no_verdict;
    double kappa_observed = 0;
    double kappa_limit = 0; // 1 - 2^-CDR
    double gap = 0;         // kappa_limit - kappa_observed
    double tolerance = 0;
};

// Compares a measured kappa with the information-theoretic limit 1 - 2^-CDR.
VerdictReport verdict(double kappa_observed, const DivergenceEstimate& estimate,
                      double tolerance = 0.08);

} // namespace classlim
