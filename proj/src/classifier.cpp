#include "classlim/classifier.hpp"
#include "classlim/errors.hpp"
#include "classlim/knn.hpp"
#include "classlim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace classlim {

namespace {

bool all_kind(const DatasetTable& ds, VariableKind kind) {
    return std::all_of(ds.variables.begin(), ds.variables.end(),
                       [&](const Variable& v) { return v.kind == kind; });
}

// ---- gaussian naive Bayes ----

struct GaussianNb {
    std::vector<double> mean[2], var[2];
    double log_prior[2] = {0, 0};

    void fit(const DatasetTable& ds, const std::vector<std::size_t>& train,
             double variance_floor) {
        const std::size_t d = ds.dims();
        std::size_t n_c[2] = {0, 0};
        for (int c = 0; c < 2; ++c) {
            mean[c].assign(d, 0.0);
            var[c].assign(d, 0.0);
        }
        for (std::size_t i : train) {
            const int c = ds.labels[i] - 1;
            ++n_c[c];
            for (std::size_t j = 0; j < d; ++j) mean[c][j] += ds.rows[i][j];
        }
        for (int c = 0; c < 2; ++c)
            for (std::size_t j = 0; j < d; ++j) mean[c][j] /= n_c[c];
        for (std::size_t i : train) {
            const int c = ds.labels[i] - 1;
            for (std::size_t j = 0; j < d; ++j) {
                const double dv = ds.rows[i][j] - mean[c][j];
                var[c][j] += dv * dv;
            }
        }
        for (int c = 0; c < 2; ++c) {
            for (std::size_t j = 0; j < d; ++j)
                var[c][j] = std::max(var[c][j] / n_c[c], variance_floor);
            log_prior[c] = std::log(static_cast<double>(n_c[c]) / train.size());
        }
    }

    int predict(const std::vector<double>& row) const {
        double score[2];
        for (int c = 0; c < 2; ++c) {
            double s = log_prior[c];
            for (std::size_t j = 0; j < row.size(); ++j) {
                const double z = row[j] - mean[c][j];
                s -= 0.5 * (z * z / var[c][j] + std::log(2.0 * M_PI * var[c][j]));
            }
            score[c] = s;
        }
        return score[0] >= score[1] ? 1 : 2; // posterior tie goes to class 1
    }
};

// ---- categorical naive Bayes (with optional per-fold discretisation) ----

struct CategoricalNb {
    // per variable, per class: Laplace-smoothed log category probabilities
    std::vector<std::vector<double>> log_prob[2];
    std::vector<std::vector<double>> edges; // per variable; empty = use value as category
    std::vector<bool> discretised;
    double log_prior[2] = {0, 0};
    double alpha = 1.0;

    std::size_t category(const DatasetTable& ds, std::size_t i, std::size_t j) const {
        const double v = ds.rows[i][j];
        if (!discretised[j]) return static_cast<std::size_t>(v);
        return std::upper_bound(edges[j].begin(), edges[j].end(), v) - edges[j].begin();
    }

    void fit(const DatasetTable& ds, const std::vector<std::size_t>& train,
             const ClassifierSpec& spec) {
        alpha = spec.smoothing_alpha;
        const std::size_t d = ds.dims();
        edges.assign(d, {});
        discretised.assign(d, false);
        std::vector<std::size_t> n_categories(d, 0);
        for (std::size_t j = 0; j < d; ++j) {
            if (ds.variables[j].kind == VariableKind::discrete) {
                n_categories[j] = std::max<std::size_t>(ds.variables[j].categories.size(), 1);
            } else {
                std::vector<double> col;
                col.reserve(train.size());
                for (std::size_t i : train) col.push_back(ds.rows[i][j]);
                edges[j] = bin_equal_entropy(std::move(col), spec.discretize_bins);
                discretised[j] = true;
                n_categories[j] = edges[j].size() + 1;
            }
        }
        std::size_t n_c[2] = {0, 0};
        std::vector<std::vector<double>> counts[2];
        for (int c = 0; c < 2; ++c) {
            counts[c].resize(d);
            for (std::size_t j = 0; j < d; ++j) counts[c][j].assign(n_categories[j], 0.0);
        }
        for (std::size_t i : train) {
            const int c = ds.labels[i] - 1;
            ++n_c[c];
            for (std::size_t j = 0; j < d; ++j) {
                std::size_t cat = category(ds, i, j);
                if (cat >= n_categories[j]) cat = n_categories[j] - 1;
                counts[c][j][cat] += 1.0;
            }
        }
        for (int c = 0; c < 2; ++c) {
            log_prob[c].resize(d);
            for (std::size_t j = 0; j < d; ++j) {
                log_prob[c][j].resize(n_categories[j]);
                const double denom = n_c[c] + alpha * n_categories[j];
                for (std::size_t cat = 0; cat < n_categories[j]; ++cat)
                    log_prob[c][j][cat] = std::log((counts[c][j][cat] + alpha) / denom);
            }
            log_prior[c] = std::log(static_cast<double>(n_c[c]) / train.size());
        }
    }

    int predict(const DatasetTable& ds, std::size_t i) const {
        double score[2];
        for (int c = 0; c < 2; ++c) {
            double s = log_prior[c];
            for (std::size_t j = 0; j < ds.dims(); ++j) {
                std::size_t cat = category(ds, i, j);
                if (cat >= log_prob[c][j].size()) cat = log_prob[c][j].size() - 1;
                s += log_prob[c][j][cat];
            }
            score[c] = s;
        }
        return score[0] >= score[1] ? 1 : 2;
    }
};

// ---- logistic regression ----

// One-hot encode discrete variables; continuous pass through. First feature
// column is the intercept.
struct FeatureMap {
    std::size_t p = 1;
    std::vector<std::size_t> offset; // per variable
    std::vector<std::size_t> width;

    explicit FeatureMap(const DatasetTable& ds) {
        offset.resize(ds.dims());
        width.resize(ds.dims());
        for (std::size_t j = 0; j < ds.dims(); ++j) {
            offset[j] = p;
            width[j] = ds.variables[j].kind == VariableKind::discrete
                           ? std::max<std::size_t>(ds.variables[j].categories.size(), 1)
                           : 1;
            p += width[j];
        }
    }

    void encode(const DatasetTable& ds, std::size_t i, double* out) const {
        out[0] = 1.0;
        for (std::size_t j = 0; j < ds.dims(); ++j) {
            if (width[j] == 1 && ds.variables[j].kind == VariableKind::continuous) {
                out[offset[j]] = ds.rows[i][j];
            } else {
                for (std::size_t c = 0; c < width[j]; ++c) out[offset[j] + c] = 0.0;
                auto cat = static_cast<std::size_t>(ds.rows[i][j]);
                if (cat < width[j]) out[offset[j] + cat] = 1.0;
            }
        }
    }
};

void solve_spd(std::vector<double>& A, std::vector<double>& b, std::size_t p) {
    // Cholesky in place; A is p x p row-major, b of length p.
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = A[i * p + j];
            for (std::size_t k = 0; k < j; ++k) s -= A[i * p + k] * A[j * p + k];
            if (i == j) {
                if (s <= 0.0) s = 1e-12;
                A[i * p + j] = std::sqrt(s);
            } else {
                A[i * p + j] = s / A[j * p + j];
            }
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= A[i * p + k] * b[k];
        b[i] = s / A[i * p + i];
    }
    for (std::size_t i = p; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < p; ++k) s -= A[k * p + i] * b[k];
        b[i] = s / A[i * p + i];
    }
}

struct Logistic {
    std::vector<double> w;

    void fit(const std::vector<double>& X, const std::vector<int>& y01, std::size_t n,
             std::size_t p, const ClassifierSpec& spec) {
        w.assign(p, 0.0);
        double grad_norm = 0.0;
        for (int iter = 0; iter < spec.max_iterations; ++iter) {
            auto [nll, g] = logistic_nll_gradient(X, y01, n, p, w, spec.l2_strength);
            grad_norm = std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
            if (grad_norm <= spec.gradient_tol) return;
            // Newton step: (X^T S X + l2 I') dw = -g
            std::vector<double> H(p * p, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double* x = X.data() + i * p;
                double z = 0;
                for (std::size_t j = 0; j < p; ++j) z += x[j] * w[j];
                const double mu = 1.0 / (1.0 + std::exp(-z));
                const double s = std::max(mu * (1.0 - mu), 1e-12);
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b <= a; ++b) H[a * p + b] += s * x[a] * x[b];
            }
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t b = a + 1; b < p; ++b) H[a * p + b] = H[b * p + a];
            for (std::size_t a = 1; a < p; ++a) H[a * p + a] += spec.l2_strength;
            std::vector<double> step = g;
            solve_spd(H, step, p);
            // backtrack if the step overshoots
            double scale = 1.0;
            for (int half = 0; half < 40; ++half) {
                std::vector<double> trial = w;
                for (std::size_t j = 0; j < p; ++j) trial[j] -= scale * step[j];
                const double trial_nll = logistic_nll_gradient(X, y01, n, p, trial,
                                                               spec.l2_strength).first;
                if (trial_nll <= nll) {
                    w = std::move(trial);
                    break;
                }
                scale *= 0.5;
                if (half == 39) w = trial; // flat region; accept and let the tol check decide
            }
        }
        const auto g = logistic_nll_gradient(X, y01, n, p, w, spec.l2_strength).second;
        grad_norm = std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
        if (grad_norm > spec.gradient_tol)
            throw ConvergenceError("logistic regression did not converge", grad_norm);
    }

    int predict(const double* x, std::size_t p) const {
        double z = 0;
        for (std::size_t j = 0; j < p; ++j) z += x[j] * w[j];
        return z >= 0.0 ? 1 : 2;
    }
};

std::vector<int> stratified_fold_assignment(const DatasetTable& ds, int folds,
                                            std::uint64_t seed) {
    std::vector<int> fold(ds.n_rows(), 0);
    Rng rng(seed);
    for (int label : {1, 2}) {
        auto idx = ds.class_indices(label);
        for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
            std::swap(idx[i], idx[j]);
        }
        for (std::size_t i = 0; i < idx.size(); ++i)
            fold[idx[i]] = static_cast<int>(i % folds);
    }
    return fold;
}

} // namespace

std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::gaussian_naive_bayes: return "gaussian_naive_bayes";
        case ClassifierKind::categorical_naive_bayes: return "categorical_naive_bayes";
        case ClassifierKind::logistic_regression: return "logistic_regression";
    }
    return "unknown";
}

ClassifierKind classifier_kind_from_string(const std::string& name) {
    if (name == "gaussian_naive_bayes" || name == "gaussian_nb" || name == "gnb")
        return ClassifierKind::gaussian_naive_bayes;
    if (name == "categorical_naive_bayes" || name == "categorical_nb" || name == "cnb")
        return ClassifierKind::categorical_naive_bayes;
    if (name == "logistic_regression" || name == "logistic" || name == "lr")
        return ClassifierKind::logistic_regression;
    throw Error("unknown classifier: " + name);
}

std::pair<double, std::vector<double>> logistic_nll_gradient(
    const std::vector<double>& X, const std::vector<int>& y01, std::size_t n,
    std::size_t p, const std::vector<double>& w, double l2_strength) {
    double nll = 0.0;
    std::vector<double> g(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* x = X.data() + i * p;
        double z = 0;
        for (std::size_t j = 0; j < p; ++j) z += x[j] * w[j];
        // log(1 + e^z) - y z, computed stably
        nll += (z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z))) - y01[i] * z;
        const double mu = 1.0 / (1.0 + std::exp(-z));
        const double r = mu - y01[i];
        for (std::size_t j = 0; j < p; ++j) g[j] += r * x[j];
    }
    for (std::size_t j = 1; j < p; ++j) {
        nll += 0.5 * l2_strength * w[j] * w[j];
        g[j] += l2_strength * w[j];
    }
    return {nll, std::move(g)};
}

CrossValidationResult cross_validate(const DatasetTable& dataset, const ClassifierSpec& spec) {
    dataset.validate();
    CrossValidationResult result;

    switch (spec.kind) {
        case ClassifierKind::gaussian_naive_bayes:
            if (!all_kind(dataset, VariableKind::continuous))
                throw Error("gaussian_naive_bayes requires all-continuous variables");
            break;
        case ClassifierKind::categorical_naive_bayes:
            if (!all_kind(dataset, VariableKind::discrete) && spec.discretize_bins == 0)
                throw Error("categorical_naive_bayes requires all-discrete variables "
                            "(or discretize_bins > 0)");
            break;
        case ClassifierKind::logistic_regression:
            break;
    }

    int folds = spec.folds;
    if (folds < 2) throw Error("cross_validate: folds must be >= 2");
    const auto min_class = static_cast<int>(std::min(dataset.n1(), dataset.n2()));
    if (min_class < 2)
        throw InsufficientDataError("cross_validate: both classes need at least 2 rows");
    if (min_class < folds) {
        folds = min_class;
        result.warnings.push_back("folds reduced to " + std::to_string(folds) +
                                  " (smallest class size)");
    }
    result.folds_used = folds;

    const auto fold = stratified_fold_assignment(dataset, folds, spec.seed);

    FeatureMap fmap(dataset);
    std::vector<double> X;
    std::vector<int> y01;
    if (spec.kind == ClassifierKind::logistic_regression) {
        X.resize(dataset.n_rows() * fmap.p);
        y01.resize(dataset.n_rows());
        for (std::size_t i = 0; i < dataset.n_rows(); ++i) {
            fmap.encode(dataset, i, X.data() + i * fmap.p);
            y01[i] = dataset.labels[i] == 1 ? 1 : 0;
        }
    }

    for (int f = 0; f < folds; ++f) {
        std::vector<std::size_t> train;
        std::vector<std::size_t> test;
        for (std::size_t i = 0; i < dataset.n_rows(); ++i)
            (fold[i] == f ? test : train).push_back(i);

        std::vector<int> predictions(test.size());
        if (spec.kind == ClassifierKind::gaussian_naive_bayes) {
            GaussianNb model;
            model.fit(dataset, train, spec.variance_floor);
            for (std::size_t t = 0; t < test.size(); ++t)
                predictions[t] = model.predict(dataset.rows[test[t]]);
        } else if (spec.kind == ClassifierKind::categorical_naive_bayes) {
            CategoricalNb model;
            model.fit(dataset, train, spec);
            for (std::size_t t = 0; t < test.size(); ++t)
                predictions[t] = model.predict(dataset, test[t]);
        } else {
            std::vector<double> Xtr(train.size() * fmap.p);
            std::vector<int> ytr(train.size());
            for (std::size_t t = 0; t < train.size(); ++t) {
                std::copy_n(X.data() + train[t] * fmap.p, fmap.p, Xtr.data() + t * fmap.p);
                ytr[t] = y01[train[t]];
            }
            Logistic model;
            model.fit(Xtr, ytr, train.size(), fmap.p, spec);
            for (std::size_t t = 0; t < test.size(); ++t)
                predictions[t] = model.predict(X.data() + test[t] * fmap.p, fmap.p);
        }

        for (std::size_t t = 0; t < test.size(); ++t) {
            const int truth = dataset.labels[test[t]];
            const int pred = predictions[t];
            if (truth == 1)
                (pred == 1 ? result.counts.n1_true : result.counts.n1_leak) += 1;
            else
                (pred == 1 ? result.counts.n2_leak : result.counts.n2_true) += 1;
        }
    }
    return result;
}

} // namespace classlim
