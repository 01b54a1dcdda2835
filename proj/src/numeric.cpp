#include "classlim/numeric.hpp"
#include "classlim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace classlim::numeric {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss rule.
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898,  0.000000000000000,  0.207784955007898,
     0.405845151377397,  0.586087235467691,  0.741531185599394,
     0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(c + h * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * fx;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fx;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b, double rel_tol, int max_intervals) {
    if (a == b) return {0.0, 0.0};
    std::priority_queue<Segment> queue;
    Segment whole = evaluate(f, a, b);
    double total = whole.value, total_err = whole.error;
    queue.push(whole);
    int used = 1;
    while (total_err > rel_tol * std::max(std::abs(total), 1e-300) && used < max_intervals) {
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = evaluate(f, worst.a, mid);
        Segment right = evaluate(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++used;
    }
    const double achieved = total_err / std::max(std::abs(total), 1e-300);
    if (achieved > rel_tol)
        throw QuadratureError("quadrature did not converge", achieved);
    return {total, total_err};
}

std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b, double x_tol) {
    const double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& weights, bool sigmas_declared) {
    const int n = static_cast<int>(x.size());
    if (n < 3) throw InsufficientDataError("fit_line needs at least 3 points");
    double sw = 0, swx = 0, swxx = 0, swy = 0, swxy = 0;
    for (int i = 0; i < n; ++i) {
        const double w = weights[i];
        sw += w;
        swx += w * x[i];
        swxx += w * x[i] * x[i];
        swy += w * y[i];
        swxy += w * x[i] * y[i];
    }
    const double det = sw * swxx - swx * swx;
    if (det <= 0.0) throw InsufficientDataError("fit_line: singular design (identical abscissae?)");
    LineFit fit;
    fit.n = n;
    fit.intercept = (swxx * swy - swx * swxy) / det;
    fit.slope = (sw * swxy - swx * swy) / det;
    double rss = 0.0, ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        rss += weights[i] * r * r;
        ss += r * r;
    }
    fit.rss = rss;
    fit.residual_rms = std::sqrt(ss / n);
    // (X^T W X)^-1
    double c00 = swxx / det, c01 = -swx / det, c11 = sw / det;
    double scale;
    if (sigmas_declared) {
        scale = std::max(rss / (n - 2), 1.0);
    } else {
        scale = rss / (n - 2);
    }
    fit.cov00 = c00 * scale;
    fit.cov01 = c01 * scale;
    fit.cov11 = c11 * scale;
    return fit;
}

} // namespace classlim::numeric
