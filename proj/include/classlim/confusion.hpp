#pragma once

#include <cstdint>

namespace classlim {

// Two-class confusion matrix
//   [ n1_true  n1_leak ]
//   [ n2_leak  n2_true ]
// where row = true class and "leak" entries were assigned to the wrong class.
struct ConfusionCounts {
    std::uint64_t n1_true = 0;
    std::uint64_t n1_leak = 0;
    std::uint64_t n2_leak = 0;
    std::uint64_t n2_true = 0;

    std::uint64_t class1() const { return n1_true + n1_leak; }
    std::uint64_t class2() const { return n2_true + n2_leak; }
    std::uint64_t total() const { return class1() + class2(); }
};

// Exponential-rate summary of a confusion matrix. Rates are in bits.
// k is NaN (with capped_k false) when kappa < 0; when kappa == 1 the rates are
// evaluated with the off-diagonal floor of one count and flagged capped.
struct RateSummary {
    double kappa = 0;
    double k = 0;      // average error rate, -log2(1-kappa)
    double k12 = 0;    // class-1 -> class-2 leakage rate
    double k21 = 0;    // class-2 -> class-1 leakage rate
    double k_w = 0;    // weighted rate f1*k21 + f2*k12
    double k_max = 0;  // log2(N) + log2(f1*f2)
    double f1 = 0;
    bool capped12 = false;
    bool capped21 = false;
    bool capped_k = false;
};

// Cohen's kappa from counts, exact rational arithmetic (128-bit integers).
// Throws DegenerateMatrixError when p_e = 1 with p_0 < 1.
double kappa(const ConfusionCounts& counts);

// All rates of the matrix; zero off-diagonals are floored at one count,
// which evaluates to k_max, with the corresponding capped flag raised.
RateSummary rates(const ConfusionCounts& counts);

// Kappa reconstructed from the two leakage rates and the class-1 fraction:
//   kappa = 2 (1 - f1 2^-k21 - f2 2^-k12) / (2 + Z (f1 - f2)),  Z = 2^-k12 - 2^-k21.
double kappa_from_rates(double f1, double k12, double k21);

// |k - k_w|; small whenever the two leakage rates are close.
double check_rate_relation(const RateSummary& summary);

} // namespace classlim
