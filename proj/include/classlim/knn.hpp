#pragma once

#include "classlim/dataset.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace classlim {

struct EstimatorConfig {
    // 0 = auto: ceil(sqrt(N)) capped at 256, N = pooled row count.
    std::size_t bins_per_variable = 0;
    int neighbor_order_k = 1;
    int repeats_m = 10;
    std::uint64_t seed = 0;
    double distance_floor = 1e-12;

    std::size_t resolve_bins(std::size_t n_rows) const;
};

// kNN estimates of the two KL divergences (CDI) and the resistor average
// distance (CDR), in bits, averaged over jitter replicates.
struct DivergenceEstimate {
    double cdi12 = 0;
    double cdi21 = 0;
    double cdr = 0;          // NaN when undefined
    bool cdr_defined = false;
    double se12 = 0;         // standard error of the replicate mean
    double se21 = 0;
    int repeats_m = 0;
    EstimatorConfig config;
    std::vector<double> replicates12;
    std::vector<double> replicates21;
};

// A point cloud: n points of dimension d, row-major.
struct PointCloud {
    std::vector<double> coords;
    std::size_t n = 0;
    std::size_t d = 0;
    const double* point(std::size_t i) const { return coords.data() + i * d; }
};

// Interior bin edges (strictly increasing) splitting the pooled column into
// bins of as equal a count as ties permit; every bin then carries the same
// Shannon entropy up to rounding. Fewer distinct values than bins degrades to
// one bin per distinct value. An empty result means a single bin.
std::vector<double> bin_equal_entropy(std::vector<double> column, std::size_t bins);

// Shannon entropy (bits) of the bin occupancy of `column` under `edges`.
double binned_entropy_bits(const std::vector<double>& column,
                           const std::vector<double>& edges);

// Encode the dataset as two jittered point clouds (class 1, class 2).
// Continuous variables: equal-entropy bins on the pooled column, each value
// replaced by a uniform draw within its bin's span. Discrete variables:
// category index + Uniform[0,1). Deterministic for a fixed config.seed.
std::pair<PointCloud, PointCloud> jitter_encode(const DatasetTable& dataset,
                                                const EstimatorConfig& config);

// Class Distance Indicator: kNN estimate of D(P1 || P2) in bits,
//   (d/N1) sum_i log2(lambda_i^{12} / lambda_i^{1}) + log2(N2 / (N1 - 1)),
// lambda^1 = k-th nearest same-cloud neighbour (query point excluded),
// lambda^12 = k-th nearest cloud-2 neighbour; exact neighbours, Euclidean
// metric, distances floored at `distance_floor`.
double cdi(const PointCloud& cloud1, const PointCloud& cloud2, int k = 1,
           double distance_floor = 1e-12);

// repeats_m jitter replicates with sub-seed = seed + replicate index;
// means, standard errors, and the CDR of the means (flagged undefined unless
// both means are positive).
DivergenceEstimate estimate(const DatasetTable& dataset, const EstimatorConfig& config);

} // namespace classlim
