#pragma once

#include "classlim/confusion.hpp"
#include "classlim/dataset.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace classlim {

enum class ClassifierKind {
    gaussian_naive_bayes,
    categorical_naive_bayes,
    logistic_regression,
};

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::gaussian_naive_bayes;
    int folds = 10;
    std::uint64_t seed = 0;
    double smoothing_alpha = 1.0;   // Laplace smoothing (categorical NB)
    double l2_strength = 1e-4;      // ridge penalty (logistic regression)
    double variance_floor = 1e-9;   // per-variable variance floor (gaussian NB)
    // categorical NB on continuous data: number of equal-frequency bins fitted
    // on each training fold (0 = require genuinely discrete variables).
    std::size_t discretize_bins = 0;
    int max_iterations = 100;       // logistic regression Newton cap
    double gradient_tol = 1e-6;
};

std::string to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(const std::string& name);

struct CrossValidationResult {
    ConfusionCounts counts;
    int folds_used = 0;
    std::vector<std::string> warnings;
};

// Stratified k-fold cross-validation: every row is classified exactly once by
// a model trained without it; class priors come from the training fold.
// A class smaller than `folds` reduces the fold count to that class size
// (recorded as a warning).
CrossValidationResult cross_validate(const DatasetTable& dataset, const ClassifierSpec& spec);

// Negative log-likelihood (plus L2 on the non-intercept weights) and its
// gradient for logistic regression; exposed for gradient verification.
// X is row-major n x p (first column = intercept), y01 holds 1 for class 1.
std::pair<double, std::vector<double>> logistic_nll_gradient(
    const std::vector<double>& X, const std::vector<int>& y01, std::size_t n,
    std::size_t p, const std::vector<double>& w, double l2_strength);

} // namespace classlim
