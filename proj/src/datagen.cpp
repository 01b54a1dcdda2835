#include "classlim/datagen.hpp"
#include "classlim/errors.hpp"
#include "classlim/rng.hpp"

#include <algorithm>
#include <cmath>

namespace classlim {

namespace {

const AnalyticModel& component(const GenSpec& spec, std::size_t j) {
    if (spec.model.kind() == AnalyticModel::Kind::product)
        return spec.model.components()[j];
    return spec.model;
}

void check_identical_components(const AnalyticModel& m) {
    if (m.kind() != AnalyticModel::Kind::product) return;
    const auto& cs = m.components();
    for (const auto& c : cs) {
        if (c.kind() == AnalyticModel::Kind::product)
            throw Error("generate: nested products are not supported");
        const auto& first = cs.front();
        if (c.kind() != first.kind() || c.mean1 != first.mean1 || c.sd1 != first.sd1 ||
            c.mean2 != first.mean2 || c.sd2 != first.sd2 || c.alpha != first.alpha ||
            c.beta != first.beta)
            throw Error("generate: all product components must be identical");
    }
}

double sample(const AnalyticModel& leaf, int label, Rng& rng) {
    if (leaf.kind() == AnalyticModel::Kind::gaussian1d) {
        return label == 1 ? leaf.mean1 + leaf.sd1 * rng.normal()
                          : leaf.mean2 + leaf.sd2 * rng.normal();
    }
    return rng.exponential(label == 1 ? leaf.alpha : leaf.beta);
}

std::uint64_t round_half_up(double x) {
    return static_cast<std::uint64_t>(std::floor(x + 0.5));
}

} // namespace

std::size_t GenSpec::dims() const {
    return model.kind() == AnalyticModel::Kind::product ? model.components().size() : 1;
}

std::string generator_identity() {
    return "mt19937_64/box-muller-normal/inverse-cdf-exponential";
}

DatasetTable generate(const GenSpec& spec) {
    if (spec.n1 == 0 || spec.n2 == 0) throw Error("generate: both classes need rows");
    check_identical_components(spec.model);
    const std::size_t d = spec.dims();
    if (d == 0) throw Error("generate: model must have at least one variable");

    DatasetTable table;
    table.name = spec.name;
    for (std::size_t j = 0; j < d; ++j)
        table.variables.push_back({"V" + std::to_string(j + 1), VariableKind::continuous, {}});
    const std::size_t n = spec.n1 + spec.n2;
    table.rows.assign(n, std::vector<double>(d, 0.0));
    table.labels.assign(n, 1);
    for (std::size_t i = spec.n1; i < n; ++i) table.labels[i] = 2;

    // One stream per column keeps results stable if columns are filled in parallel.
    for (std::size_t j = 0; j < d; ++j) {
        Rng rng(spec.seed + j);
        const AnalyticModel& leaf = component(spec, j);
        for (std::size_t i = 0; i < n; ++i)
            table.rows[i][j] = sample(leaf, table.labels[i], rng);
    }
    return table;
}

DatasetTable subsample_to_f1(const DatasetTable& dataset, double f1_target,
                             std::uint64_t seed) {
    if (!(f1_target > 0.0 && f1_target < 1.0))
        throw InfeasibleImbalanceError("subsample_to_f1: target must lie in (0,1)");
    dataset.validate();
    const double native = dataset.f1();
    if (f1_target == native) return dataset;

    const std::size_t n1 = dataset.n1(), n2 = dataset.n2();
    int reduced_label;
    std::size_t keep;
    if (f1_target < native) {
        reduced_label = 1;
        keep = round_half_up(static_cast<double>(n2) * f1_target / (1.0 - f1_target));
        if (keep > n1) keep = n1;
    } else {
        reduced_label = 2;
        keep = round_half_up(static_cast<double>(n1) * (1.0 - f1_target) / f1_target);
        if (keep > n2) keep = n2;
    }
    if (keep < 2)
        throw InfeasibleImbalanceError("subsample_to_f1: the reduced class would have fewer than 2 rows");

    auto idx = dataset.class_indices(reduced_label);
    // Partial Fisher-Yates, then restore table order of the kept rows.
    Rng rng(seed);
    for (std::size_t i = 0; i < keep; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(keep);
    std::sort(idx.begin(), idx.end());

    std::vector<bool> drop(dataset.n_rows(), false);
    for (std::size_t i : dataset.class_indices(reduced_label)) drop[i] = true;
    for (std::size_t i : idx) drop[i] = false;

    DatasetTable out;
    out.name = dataset.name;
    out.variables = dataset.variables;
    out.class_names = dataset.class_names;
    for (std::size_t i = 0; i < dataset.n_rows(); ++i) {
        if (drop[i]) continue;
        out.rows.push_back(dataset.rows[i]);
        out.labels.push_back(dataset.labels[i]);
    }
    return out;
}

} // namespace classlim
