#include "classlim/confusion.hpp"
#include "classlim/errors.hpp"

#include <cmath>
#include <limits>

namespace classlim {

namespace {
using int128 = __int128;
}

double kappa(const ConfusionCounts& c) {
    const std::uint64_t N1 = c.class1(), N2 = c.class2();
    if (N1 == 0 || N2 == 0)
        throw Error("kappa: both classes must have at least one entry");
    const std::uint64_t N = N1 + N2;
    // kappa = (p0 - pe) / (1 - pe) with
    //   p0 = (n1t + n2t) / N
    //   pe = N1 (n1t + n2l) / N^2 + N2 (n2t + n1l) / N^2
    // evaluated as one exact rational.
    const int128 pred1 = int128(c.n1_true) + int128(c.n2_leak);
    const int128 pred2 = int128(c.n2_true) + int128(c.n1_leak);
    const int128 num =
        int128(N) * (int128(c.n1_true) + int128(c.n2_true)) -
        (int128(N1) * pred1 + int128(N2) * pred2);
    const int128 den =
        int128(N) * int128(N) - (int128(N1) * pred1 + int128(N2) * pred2);
    if (den == 0) {
        if (num == 0) return 1.0; // p0 = pe = 1: degenerate perfect agreement
        throw DegenerateMatrixError("kappa: chance agreement is 1 with imperfect observed agreement");
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

RateSummary rates(const ConfusionCounts& c) {
    const std::uint64_t N1 = c.class1(), N2 = c.class2();
    const std::uint64_t N = N1 + N2;
    if (N1 == 0 || N2 == 0)
        throw Error("rates: both classes must have at least one entry");
    RateSummary s;
    s.f1 = static_cast<double>(N1) / N;
    const double f2 = 1.0 - s.f1;
    s.k_max = std::log2(static_cast<double>(N)) + std::log2(s.f1 * f2);

    const double denom = static_cast<double>(N1) * static_cast<double>(N2) / N;
    s.capped12 = (c.n1_leak == 0);
    s.capped21 = (c.n2_leak == 0);
    s.k12 = -std::log2(static_cast<double>(s.capped12 ? 1 : c.n1_leak) / denom);
    s.k21 = -std::log2(static_cast<double>(s.capped21 ? 1 : c.n2_leak) / denom);

    s.kappa = kappa(c);
    if (s.kappa < 0.0) {
        s.k = std::numeric_limits<double>::quiet_NaN();
    } else if (s.kappa == 1.0) {
        s.k = s.k_max;
        s.capped_k = true;
    } else {
        s.k = -std::log2(1.0 - s.kappa);
    }
    s.k_w = s.f1 * s.k21 + f2 * s.k12;
    return s;
}

double kappa_from_rates(double f1, double k12, double k21) {
    const double f2 = 1.0 - f1;
    const double e12 = std::exp2(-k12), e21 = std::exp2(-k21);
    const double z = e12 - e21;
    return 2.0 * (1.0 - f1 * e21 - f2 * e12) / (2.0 + z * (f1 - f2));
}

double check_rate_relation(const RateSummary& s) {
    return std::abs(s.k - s.k_w);
}

} // namespace classlim
