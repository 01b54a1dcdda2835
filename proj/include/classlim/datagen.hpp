#pragma once

#include "classlim/analytic.hpp"
#include "classlim/dataset.hpp"

#include <cstdint>
#include <string>

namespace classlim {

// Monte Carlo spec: a product of identical 1-d components, sampled independently
// per column with per-column sub-seeds (seed + column index).
struct GenSpec {
    AnalyticModel model = AnalyticModel::gaussian1d(0, 1, 1.02, 1);
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::uint64_t seed = 0;
    std::string name = "synthetic";

    // Number of independent columns (1 for a leaf model).
    std::size_t dims() const;
};

// Identifier of the sampling recipe, recorded in run manifests.
std::string generator_identity();

DatasetTable generate(const GenSpec& spec);

// Reduce exactly one class by uniform subsampling (without replacement) so the
// class-1 fraction reaches f1_target: the class whose share must shrink is
// subsampled, the other is kept whole. Kept counts use round-half-up. Retained
// rows are unmodified and keep their table order.
DatasetTable subsample_to_f1(const DatasetTable& dataset, double f1_target,
                             std::uint64_t seed);

} // namespace classlim
