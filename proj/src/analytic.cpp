#include "classlim/analytic.hpp"
#include "classlim/errors.hpp"
#include "classlim/numeric.hpp"

#include <cmath>

namespace classlim {

namespace {

constexpr double kLog2 = 0.6931471805599453;
// Integrand tails are cut where they fall below this fraction of the peak.
constexpr double kTailCut = 1e-14;
constexpr double kRelTol = 1e-8;

double to_bits(double nats) { return nats / kLog2; }

// KL divergences of a leaf model in nats.
std::pair<double, double> leaf_kl_nats(const AnalyticModel& m) {
    if (m.kind() == AnalyticModel::Kind::gaussian1d) {
        const double dmu = m.mean1 - m.mean2;
        const double v1 = m.sd1 * m.sd1, v2 = m.sd2 * m.sd2;
        const double d12 = std::log(m.sd2 / m.sd1) + (v1 + dmu * dmu) / (2 * v2) - 0.5;
        const double d21 = std::log(m.sd1 / m.sd2) + (v2 + dmu * dmu) / (2 * v1) - 0.5;
        return {d12, d21};
    }
    const double d12 = std::log(m.beta / m.alpha) + m.alpha / m.beta - 1.0;
    const double d21 = std::log(m.alpha / m.beta) + m.beta / m.alpha - 1.0;
    return {d12, d21};
}

// -log integral of p^t q^(1-t) for a leaf, in nats; equals (1-t) D_t(P||Q).
// Swapping roles gives the (Q||P) direction.
double leaf_neg_log_integral(const AnalyticModel& m, double t, bool swap) {
    const auto lp = [&](double x) { return swap ? m.log_pdf2(x) : m.log_pdf1(x); };
    const auto lq = [&](double x) { return swap ? m.log_pdf1(x) : m.log_pdf2(x); };

    double lo, hi, peak_x;
    const double cut = -std::log(kTailCut);
    if (m.kind() == AnalyticModel::Kind::gaussian1d) {
        const double mu_p = swap ? m.mean2 : m.mean1, sd_p = swap ? m.sd2 : m.sd1;
        const double mu_q = swap ? m.mean1 : m.mean2, sd_q = swap ? m.sd1 : m.sd2;
        const double wp = t / (sd_p * sd_p), wq = (1 - t) / (sd_q * sd_q);
        peak_x = (wp * mu_p + wq * mu_q) / (wp + wq);
        const double half_width = std::sqrt(2.0 * cut / (wp + wq));
        lo = peak_x - half_width;
        hi = peak_x + half_width;
    } else {
        const double sc_p = swap ? m.beta : m.alpha, sc_q = swap ? m.alpha : m.beta;
        const double s = t / sc_p + (1 - t) / sc_q;
        peak_x = 0.0;
        lo = 0.0;
        hi = cut / s;
    }
    const double log_peak = t * lp(peak_x) + (1 - t) * lq(peak_x);
    const auto integrand = [&](double x) {
        return std::exp(t * lp(x) + (1 - t) * lq(x) - log_peak);
    };
    const auto q = numeric::integrate(integrand, lo, hi, kRelTol);
    return -(std::log(q.value) + log_peak);
}

// Renyi divergence D_t in nats; direction picked by `swap`.
double renyi_nats(const AnalyticModel& m, double t, bool swap) {
    if (t < 0.0 || t > 1.0) throw Error("renyi_divergence: order t must lie in [0,1]");
    if (t == 0.0) return 0.0;
    if (m.kind() == AnalyticModel::Kind::product) {
        double sum = 0.0;
        for (const auto& c : m.components()) sum += renyi_nats(c, t, swap);
        return sum;
    }
    if (t == 1.0) {
        const auto kl = leaf_kl_nats(m);
        return swap ? kl.second : kl.first;
    }
    return leaf_neg_log_integral(m, t, swap) / (1.0 - t);
}

// C_t(P||Q) = (1-t) D_t(P||Q) in nats. At t = 1 this is t D_0(Q||P) = 0.
double chernoff_nats(const AnalyticModel& m, double t) {
    if (t < 0.0 || t > 1.0) throw Error("chernoff_divergence: order t must lie in [0,1]");
    if (t == 0.0 || t == 1.0) return 0.0;
    if (m.kind() == AnalyticModel::Kind::product) {
        double sum = 0.0;
        for (const auto& c : m.components()) sum += chernoff_nats(c, t);
        return sum;
    }
    return leaf_neg_log_integral(m, t, false);
}

} // namespace

AnalyticModel AnalyticModel::gaussian1d(double mean1, double sd1, double mean2, double sd2) {
    if (!(sd1 > 0.0) || !(sd2 > 0.0))
        throw Error("gaussian1d: standard deviations must be positive");
    AnalyticModel m;
    m.kind_ = Kind::gaussian1d;
    m.mean1 = mean1;
    m.sd1 = sd1;
    m.mean2 = mean2;
    m.sd2 = sd2;
    return m;
}

AnalyticModel AnalyticModel::exponential1d(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw Error("exponential1d: scales must be positive");
    AnalyticModel m;
    m.kind_ = Kind::exponential1d;
    m.alpha = alpha;
    m.beta = beta;
    return m;
}

AnalyticModel AnalyticModel::product(std::vector<AnalyticModel> components) {
    if (components.empty()) throw Error("product: component list must be non-empty");
    AnalyticModel m;
    m.kind_ = Kind::product;
    m.components_ = std::move(components);
    return m;
}

double AnalyticModel::log_pdf1(double x) const {
    if (kind_ == Kind::gaussian1d) {
        const double z = (x - mean1) / sd1;
        return -0.5 * z * z - std::log(sd1) - 0.5 * std::log(2.0 * M_PI);
    }
    if (x < 0.0) return -std::numeric_limits<double>::infinity();
    return -x / alpha - std::log(alpha);
}

double AnalyticModel::log_pdf2(double x) const {
    if (kind_ == Kind::gaussian1d) {
        const double z = (x - mean2) / sd2;
        return -0.5 * z * z - std::log(sd2) - 0.5 * std::log(2.0 * M_PI);
    }
    if (x < 0.0) return -std::numeric_limits<double>::infinity();
    return -x / beta - std::log(beta);
}

std::pair<double, double> kl_closed_form(const AnalyticModel& model) {
    if (model.kind() == AnalyticModel::Kind::product) {
        double d12 = 0, d21 = 0;
        for (const auto& c : model.components()) {
            const auto kl = kl_closed_form(c);
            d12 += kl.first;
            d21 += kl.second;
        }
        return {d12, d21};
    }
    const auto kl = leaf_kl_nats(model);
    return {to_bits(kl.first), to_bits(kl.second)};
}

double renyi_divergence(const AnalyticModel& model, double t) {
    return to_bits(renyi_nats(model, t, false));
}

double chernoff_divergence(const AnalyticModel& model, double t) {
    return to_bits(chernoff_nats(model, t));
}

std::pair<double, double> chernoff_information(const AnalyticModel& model) {
    const auto [tc, c] = numeric::golden_max(
        [&](double t) { return chernoff_nats(model, t); }, 0.0, 1.0, 1e-6);
    return {to_bits(c), tc};
}

double resistor_average(double d12_bits, double d21_bits) {
    if (!(d12_bits > 0.0) || !(d21_bits > 0.0))
        throw UndefinedDistanceError("resistor_average: both divergences must be positive");
    return d12_bits * d21_bits / (d12_bits + d21_bits);
}

double t_r(double d12_bits, double d21_bits) {
    if (!(d12_bits > 0.0) || !(d21_bits > 0.0))
        throw UndefinedDistanceError("t_r: both divergences must be positive");
    return d12_bits / (d12_bits + d21_bits);
}

std::pair<double, double> second_order_coefficients(const AnalyticModel& model) {
    const double dh_pq = renyi_nats(model, 0.5, false);
    const double dh_qp = renyi_nats(model, 0.5, true);
    const auto [d12, d21] = kl_closed_form(model);
    const double a = 4.0 * to_bits(dh_pq) - 2.0 * d12;
    const double b = 4.0 * to_bits(dh_qp) - 2.0 * d21;
    return {a, b};
}

double second_order_bracket(const AnalyticModel& model) {
    const auto [a, b] = second_order_coefficients(model);
    const auto [d12, d21] = kl_closed_form(model);
    return 1.0 + a / (4.0 * d12) + b / (4.0 * d21);
}

DivergenceCurve divergence_curve(const AnalyticModel& model, int n_grid) {
    if (n_grid < 3) throw Error("divergence_curve: n_grid must be >= 3");
    DivergenceCurve curve;
    const auto [d12, d21] = kl_closed_form(model);
    curve.d12 = d12;
    curve.d21 = d21;
    curve.r = resistor_average(d12, d21);
    curve.t_r = t_r(d12, d21);
    curve.t_grid.reserve(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        const double t = static_cast<double>(i) / (n_grid - 1);
        curve.t_grid.push_back(t);
        curve.renyi_pq.push_back(to_bits(renyi_nats(model, t, false)));
        curve.renyi_qp.push_back(to_bits(renyi_nats(model, 1.0 - t, true)));
        curve.chernoff.push_back(to_bits(chernoff_nats(model, t)));
    }
    const auto [c, tc] = chernoff_information(model);
    curve.chernoff_info = c;
    curve.t_c = tc;
    curve.bhattacharyya = chernoff_divergence(model, 0.5);
    const auto [a, b] = second_order_coefficients(model);
    curve.a_coef = a;
    curve.b_coef = b;
    return curve;
}

} // namespace classlim
