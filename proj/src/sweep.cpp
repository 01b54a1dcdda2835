#include "classlim/sweep.hpp"
#include "classlim/datagen.hpp"
#include "classlim/errors.hpp"
#include "classlim/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace classlim {

namespace {

constexpr double kLog2E = 1.4426950408889634;

// Rate uncertainty from the implied leak count n = f1 f2 N 2^-k (floored at 1).
double rate_sigma(double k, double f1, double n_total) {
    const double n_leak = std::max(f1 * (1.0 - f1) * n_total * std::exp2(-k), 1.0);
    return kLog2E / std::sqrt(n_leak);
}

// One leakage line in the endpoint parametrisation y = low + (high - low) u,
// u in [0,1] (u = f1 for the rising k12 line, u = 1 - f1 for k21), with the
// box constraints 0 <= low <= high applied by clamping the violated bound and
// refitting the remaining free parameter.
struct LineEndpoints {
    double low = 0, high = 0, se_low = 0, se_high = 0;
    double residual_rms = 0;
};

LineEndpoints fit_endpoints(const std::vector<double>& u, const std::vector<double>& y,
                            const std::vector<double>& w, bool sigmas_declared) {
    auto fit = numeric::fit_line(u, y, w, sigmas_declared);
    LineEndpoints out;
    out.residual_rms = fit.residual_rms;
    double a = fit.intercept, b = fit.slope;
    double se_a = std::sqrt(std::max(fit.cov00, 0.0));
    double se_ab = std::sqrt(std::max(fit.cov00 + 2 * fit.cov01 + fit.cov11, 0.0));

    if (b < 0.0) {
        // high < low: collapse to the weighted mean
        double sw = 0, swy = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            sw += w[i];
            swy += w[i] * y[i];
        }
        a = swy / sw;
        b = 0.0;
        se_a = se_ab = std::sqrt(std::max(fit.cov00, 0.0));
    }
    if (a < 0.0) {
        // pin the low endpoint at zero, refit the slope alone
        double suu = 0, suy = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            suu += w[i] * u[i] * u[i];
            suy += w[i] * u[i] * y[i];
        }
        b = std::max(suy / suu, 0.0);
        double scale = 1.0;
        if (u.size() > 1) {
            double rss = 0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double r = y[i] - b * u[i];
                rss += w[i] * r * r;
            }
            scale = rss / (u.size() - 1);
            if (sigmas_declared) scale = std::max(scale, 1.0);
        }
        out.low = 0.0;
        out.high = b;
        out.se_low = se_a; // uncertainty of the clamped bound, from the free fit
        out.se_high = std::sqrt(scale / suu);
        return out;
    }
    out.low = a;
    out.high = a + b;
    out.se_low = se_a;
    out.se_high = se_ab;
    return out;
}

} // namespace

std::vector<double> default_f1_grid(double native_f1) {
    std::vector<double> grid;
    for (int i = 1; i <= 19; ++i) grid.push_back(i * 0.05);
    const bool has_native = std::any_of(grid.begin(), grid.end(), [&](double g) {
        return std::abs(g - native_f1) < 1e-9;
    });
    if (!has_native) grid.push_back(native_f1);
    return grid;
}

SweepResult sweep(const DatasetTable& dataset, const std::vector<double>& f1_grid,
                  const ClassifierSpec& classifier, const EstimatorConfig& estimator,
                  std::uint64_t seed) {
    dataset.validate();
    SweepResult result;
    for (std::size_t g = 0; g < f1_grid.size(); ++g) {
        const double target = f1_grid[g];
        DatasetTable sub;
        try {
            sub = subsample_to_f1(dataset, target, seed + g);
        } catch (const InfeasibleImbalanceError& e) {
            result.warnings.push_back("f1=" + std::to_string(target) + " skipped: " + e.what());
            continue;
        }
        SweepPoint point;
        point.f1 = sub.f1();
        auto cv = cross_validate(sub, classifier);
        for (auto& w : cv.warnings)
            result.warnings.push_back("f1=" + std::to_string(target) + ": " + w);
        point.counts = cv.counts;
        point.rates = rates(cv.counts);
        point.divergence = estimate(sub, estimator);
        result.points.push_back(std::move(point));
    }
    return result;
}

FitResult fit_leakage_model(const std::vector<SweepPoint>& points,
                            const std::optional<std::pair<double, double>>& anchors,
                            FitWeighting weighting) {
    LinePoints line12, line21; // k12 rises with f1; k21 falls
    int usable12 = 0, usable21 = 0;
    for (const auto& p : points) {
        const double n_total = static_cast<double>(p.counts.total());
        if (!p.rates.capped12) {
            line12.x.push_back(p.f1);
            line12.y.push_back(p.rates.k12);
            const double s = weighting == FitWeighting::counts
                                 ? rate_sigma(p.rates.k12, p.f1, n_total)
                                 : 1.0;
            line12.w.push_back(1.0 / (s * s));
            ++usable12;
        }
        if (!p.rates.capped21) {
            line21.x.push_back(p.f1);
            line21.y.push_back(p.rates.k21);
            const double s = weighting == FitWeighting::counts
                                 ? rate_sigma(p.rates.k21, p.f1, n_total)
                                 : 1.0;
            line21.w.push_back(1.0 / (s * s));
            ++usable21;
        }
    }
    if (usable12 < 3 || usable21 < 3)
        throw InsufficientDataError("fit_leakage_model: need at least 3 uncapped points per line");

    FitResult fit;
    fit.weighting = weighting;
    fit.n_points12 = usable12;
    fit.n_points21 = usable21;
    if (anchors) {
        fit.anchored = true;
        double w12 = 1.0, w21 = 1.0;
        if (weighting == FitWeighting::counts) {
            // anchors carry the weight of a typical sweep point
            std::vector<double> ws = line12.w;
            std::nth_element(ws.begin(), ws.begin() + ws.size() / 2, ws.end());
            w12 = ws[ws.size() / 2];
            ws = line21.w;
            std::nth_element(ws.begin(), ws.begin() + ws.size() / 2, ws.end());
            w21 = ws[ws.size() / 2];
        }
        line12.x.push_back(1.0);
        line12.y.push_back(anchors->second); // k12(1) = CDI(2,1)
        line12.w.push_back(w12);
        line21.x.push_back(0.0);
        line21.y.push_back(anchors->first); // k21(0) = CDI(1,2)
        line21.w.push_back(w21);
    }

    const bool declared = weighting == FitWeighting::counts;
    auto f12 = fit_with_constraints(line12, declared, true, &fit.delta1, &fit.d21_fit,
                                    &fit.se_delta1, &fit.se_d21);
    auto f21 = fit_with_constraints(line21, declared, false, &fit.d12_fit, &fit.delta2,
                                    &fit.se_d12, &fit.se_delta2);
    fit.residual_rms = std::sqrt(0.5 * (f12.residual_rms * f12.residual_rms +
                                        f21.residual_rms * f21.residual_rms));

    fit.f_b = balance_point(fit);
    const double denom = (fit.d21_fit - fit.delta1) + (fit.d12_fit - fit.delta2);
    if (denom > 0.0) {
        fit.f_cross = (fit.d12_fit - fit.delta1) / denom;
        fit.no_crossing = !(fit.f_cross > 0.0 && fit.f_cross < 1.0);
    } else {
        fit.f_cross = std::numeric_limits<double>::quiet_NaN();
        fit.no_crossing = true;
    }
    if (fit.d12_fit > 0.0 && fit.d21_fit > 0.0)
        fit.t_r = fit.d12_fit / (fit.d12_fit + fit.d21_fit);
    return fit;
}

double balance_point(const FitResult& fit) {
    const double d12 = fit.d12_fit, d21 = fit.d21_fit;
    if (!(d12 > 0.0) || !(d21 > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    const double sum = d12 + d21;
    return d12 / sum * (1.0 + (fit.delta1 + fit.delta2) / sum - fit.delta1 / d12);
}

std::vector<std::pair<double, double>> predict_kappa_curve(
    const FitResult& fit, const std::vector<double>& f1_grid) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(f1_grid.size());
    for (double f1 : f1_grid) {
        const double k12 = fit.delta1 + (fit.d21_fit - fit.delta1) * f1;
        const double k21 = fit.d12_fit - (fit.d12_fit - fit.delta2) * f1;
        curve.emplace_back(f1, kappa_from_rates(f1, k12, k21));
    }
    return curve;
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::at_limit: return "at-limit";
        case Verdict::below_limit: return "below-limit";
        case Verdict::above_limit_check_estimator: return "above-limit-check-estimator";
        case Verdict::no_verdict: return "no-verdict";
    }
    return "no-verdict";
}

VerdictReport verdict(double kappa_observed, const DivergenceEstimate& estimate,
                      double tolerance) {
    VerdictReport report;
    report.kappa_observed = kappa_observed;
    report.tolerance = tolerance;
    if (!estimate.cdr_defined) {
        report.verdict = Verdict::no_verdict;
        report.kappa_limit = std::numeric_limits<double>::quiet_NaN();
        report.gap = std::numeric_limits<double>::quiet_NaN();
        return report;
    }
    report.kappa_limit = 1.0 - std::exp2(-estimate.cdr);
    report.gap = report.kappa_limit - kappa_observed;
    if (std::abs(report.gap) <= tolerance)
        report.verdict = Verdict::at_limit;
    else if (report.gap > tolerance)
        report.verdict = Verdict::below_limit;
    else
        report.verdict = Verdict::above_limit_check_estimator;
    return report;
}

} // namespace classlim
