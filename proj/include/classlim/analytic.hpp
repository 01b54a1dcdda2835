#pragma once

#include <utility>
#include <vector>

namespace classlim {

// Closed-form-capable density pair for one variable, or an independent product
// of such pairs. All public divergence values are in bits.
class AnalyticModel {
public:
    enum class Kind { gaussian1d, exponential1d, product };

    static AnalyticModel gaussian1d(double mean1, double sd1, double mean2, double sd2);
    // Exponential pdfs (1/scale) exp(-x/scale); alpha is the class-1 scale.
    static AnalyticModel exponential1d(double alpha, double beta);
    static AnalyticModel product(std::vector<AnalyticModel> components);

    Kind kind() const { return kind_; }
    const std::vector<AnalyticModel>& components() const { return components_; }

    double mean1 = 0, sd1 = 1, mean2 = 0, sd2 = 1; // gaussian1d
    double alpha = 1, beta = 1;                    // exponential1d

    // Leaf-only log densities.
    double log_pdf1(double x) const;
    double log_pdf2(double x) const;

private:
    AnalyticModel() = default;
    Kind kind_ = Kind::gaussian1d;
    std::vector<AnalyticModel> components_;
};

struct DivergenceCurve {
    std::vector<double> t_grid;
    std::vector<double> renyi_pq;  // D_t(P||Q), bits
    std::vector<double> renyi_qp;  // D_{1-t}(Q||P), bits
    std::vector<double> chernoff;  // C_t(P||Q), bits
    double d12 = 0;            // D(P||Q), bits
    double d21 = 0;            // D(Q||P), bits
    double r = 0;              // resistor average, bits
    double t_r = 0;
    double chernoff_info = 0;  // C(P,Q), bits
    double t_c = 0;
    double bhattacharyya = 0;  // C_{1/2}, bits
    double a_coef = 0;         // second-order fit A, bits
    double b_coef = 0;         // second-order fit B, bits
};

// Exact KL divergences (D(P||Q), D(Q||P)) in bits.
std::pair<double, double> kl_closed_form(const AnalyticModel& model);

// Renyi divergence D_t(P||Q) in bits, 0 <= t <= 1. The t = 0 and t = 1 values
// are closed-form limits; interior orders integrate p^t q^(1-t) adaptively.
double renyi_divergence(const AnalyticModel& model, double t);

// Chernoff divergence C_t(P||Q) = (1-t) D_t(P||Q), bits.
double chernoff_divergence(const AnalyticModel& model, double t);

// Chernoff information: (max_t C_t, argmax t), golden-section search.
std::pair<double, double> chernoff_information(const AnalyticModel& model);

// Parallel-resistor combination of the two KL divergences.
double resistor_average(double d12_bits, double d21_bits);

// t at which the resistor average occurs: d12 / (d12 + d21).
double t_r(double d12_bits, double d21_bits);

// Coefficients (A, B) of the parabolic Renyi fit
//   D_t(P||Q) ~ t D(P||Q) + A t(1-t),  D_{1-t}(Q||P) ~ (1-t) D(Q||P) + B t(1-t)
// fixed by the curves meeting at t = 1/2: A = 4 D_1/2(P||Q) - 2 D(P||Q),
// B = 4 D_1/2(Q||P) - 2 D(Q||P). Bits.
std::pair<double, double> second_order_coefficients(const AnalyticModel& model);

// Correction bracket 1 + A/(4 d12) + B/(4 d21) relating D_1/2 to R(P,Q).
double second_order_bracket(const AnalyticModel& model);

// Full profile on a uniform t grid with n_grid points (n_grid >= 3).
DivergenceCurve divergence_curve(const AnalyticModel& model, int n_grid);

} // namespace classlim
