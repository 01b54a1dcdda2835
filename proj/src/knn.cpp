#include "classlim/knn.hpp"
#include "classlim/analytic.hpp"
#include "classlim/errors.hpp"
#include "classlim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace classlim {

namespace {

// Exact kd-tree over a point cloud; median splits on the widest dimension.
class KdTree {
public:
    explicit KdTree(const PointCloud& cloud) : cloud_(cloud) {
        order_.resize(cloud.n);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        nodes_.reserve(2 * cloud.n / kLeafSize + 2);
        if (cloud.n > 0) root_ = build(0, cloud.n);
    }

    // Distance (not squared) of the k-th nearest neighbour of `query`,
    // excluding the point with index `exclude` (pass npos to keep all).
    double knn_distance(const double* query, int k, std::size_t exclude) const {
        best_.assign(k, std::numeric_limits<double>::infinity());
        search(root_, query, k, exclude);
        return std::sqrt(best_.back());
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    static constexpr std::size_t kLeafSize = 12;

    struct Node {
        double split = 0;
        int dim = -1;             // -1 marks a leaf
        std::size_t begin = 0, end = 0;
        int left = -1, right = -1;
    };

    int build(std::size_t begin, std::size_t end) {
        Node node;
        node.begin = begin;
        node.end = end;
        if (end - begin <= kLeafSize) {
            nodes_.push_back(node);
            return static_cast<int>(nodes_.size() - 1);
        }
        // widest dimension of this subset
        const std::size_t d = cloud_.d;
        int dim = 0;
        double widest = -1.0;
        for (std::size_t j = 0; j < d; ++j) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t i = begin; i < end; ++i) {
                const double v = cloud_.point(order_[i])[j];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi - lo > widest) {
                widest = hi - lo;
                dim = static_cast<int>(j);
            }
        }
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](std::size_t a, std::size_t b) {
                             return cloud_.point(a)[dim] < cloud_.point(b)[dim];
                         });
        node.dim = dim;
        node.split = cloud_.point(order_[mid])[dim];
        nodes_.push_back(node);
        const int self = static_cast<int>(nodes_.size() - 1);
        const int left = build(begin, mid);
        const int right = build(mid, end);
        nodes_[self].left = left;
        nodes_[self].right = right;
        return self;
    }

    void consider(std::size_t idx, const double* query, int k, std::size_t exclude) const {
        if (idx == exclude) return;
        const double* p = cloud_.point(idx);
        double dist2 = 0;
        const double worst = best_.back();
        for (std::size_t j = 0; j < cloud_.d; ++j) {
            const double diff = query[j] - p[j];
            dist2 += diff * diff;
            if (dist2 >= worst) return;
        }
        // insert into the sorted k-best list
        int pos = k - 1;
        while (pos > 0 && best_[pos - 1] > dist2) {
            best_[pos] = best_[pos - 1];
            --pos;
        }
        best_[pos] = dist2;
    }

    void search(int node_id, const double* query, int k, std::size_t exclude) const {
        const Node& node = nodes_[node_id];
        if (node.dim < 0) {
            for (std::size_t i = node.begin; i < node.end; ++i)
                consider(order_[i], query, k, exclude);
            return;
        }
        const double delta = query[node.dim] - node.split;
        const int near = delta < 0 ? node.left : node.right;
        const int far = delta < 0 ? node.right : node.left;
        search(near, query, k, exclude);
        if (delta * delta < best_.back()) search(far, query, k, exclude);
    }

    const PointCloud& cloud_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
    int root_ = -1;
    mutable std::vector<double> best_;
};

struct VariableEncoding {
    // Continuous: bin spans in original units. Discrete: unit spans on the
    // category index. span_lo[b] + u * span_width[b] is the jittered value.
    std::vector<double> edges;
    std::vector<double> span_lo;
    std::vector<double> span_width;
    bool discrete = false;

    std::size_t bin_of(double v) const {
        return std::upper_bound(edges.begin(), edges.end(), v) - edges.begin();
    }
};

VariableEncoding make_encoding(const DatasetTable& dataset, std::size_t var,
                               std::size_t bins) {
    VariableEncoding enc;
    const Variable& variable = dataset.variables[var];
    if (variable.kind == VariableKind::discrete) {
        enc.discrete = true;
        return enc;
    }
    std::vector<double> pooled;
    pooled.reserve(dataset.n_rows());
    for (const auto& row : dataset.rows) pooled.push_back(row[var]);
    const auto [lo_it, hi_it] = std::minmax_element(pooled.begin(), pooled.end());
    const double lo = *lo_it, hi = *hi_it;
    enc.edges = bin_equal_entropy(std::move(pooled), bins);
    std::vector<double> bounds;
    bounds.push_back(lo);
    bounds.insert(bounds.end(), enc.edges.begin(), enc.edges.end());
    bounds.push_back(hi);
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
        enc.span_lo.push_back(bounds[b]);
        enc.span_width.push_back(bounds[b + 1] - bounds[b]);
    }
    if (enc.span_lo.size() == 1 && enc.span_width[0] == 0.0)
        enc.span_width[0] = 1.0; // constant column: keep jitter non-degenerate
    return enc;
}

} // namespace

std::size_t EstimatorConfig::resolve_bins(std::size_t n_rows) const {
    if (bins_per_variable > 0) return std::max<std::size_t>(bins_per_variable, 2);
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_rows))));
    return std::clamp<std::size_t>(root, 2, 256);
}

std::vector<double> bin_equal_entropy(std::vector<double> column, std::size_t bins) {
    std::sort(column.begin(), column.end());
    const std::size_t n = column.size();
    if (n == 0) return {};
    bins = std::min(bins, n);

    std::vector<double> distinct;
    distinct.push_back(column.front());
    for (double v : column)
        if (v != distinct.back()) distinct.push_back(v);

    std::vector<double> edges;
    if (distinct.size() <= 1) return edges;
    if (distinct.size() < bins) {
        // one bin per distinct value
        for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
            edges.push_back(0.5 * (distinct[i] + distinct[i + 1]));
        return edges;
    }
    for (std::size_t b = 1; b < bins; ++b) {
        std::size_t r = (b * n + bins / 2) / bins; // round(b*n/bins)
        r = std::clamp<std::size_t>(r, 1, n - 1);
        if (column[r - 1] < column[r]) {
            const double edge = 0.5 * (column[r - 1] + column[r]);
            if (edges.empty() || edge > edges.back()) edges.push_back(edge);
        }
        // a tie across the cut collapses that boundary
    }
    return edges;
}

double binned_entropy_bits(const std::vector<double>& column,
                           const std::vector<double>& edges) {
    std::vector<std::size_t> counts(edges.size() + 1, 0);
    for (double v : column) {
        const std::size_t b =
            std::upper_bound(edges.begin(), edges.end(), v) - edges.begin();
        ++counts[b];
    }
    double h = 0.0;
    const double n = static_cast<double>(column.size());
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = c / n;
        h -= p * std::log2(p);
    }
    return h;
}

std::pair<PointCloud, PointCloud> jitter_encode(const DatasetTable& dataset,
                                                const EstimatorConfig& config) {
    dataset.validate();
    const std::size_t d = dataset.dims();
    const std::size_t n = dataset.n_rows();
    const std::size_t bins = config.resolve_bins(n);

    std::vector<VariableEncoding> enc;
    enc.reserve(d);
    for (std::size_t j = 0; j < d; ++j) enc.push_back(make_encoding(dataset, j, bins));

    std::vector<std::vector<double>> coords(n, std::vector<double>(d));
    Rng rng(config.seed);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double u = rng.uniform();
            const double v = dataset.rows[i][j];
            if (enc[j].discrete) {
                coords[i][j] = v + u;
            } else {
                const std::size_t b = enc[j].bin_of(v);
                coords[i][j] = enc[j].span_lo[b] + u * enc[j].span_width[b];
            }
        }
    }

    PointCloud c1, c2;
    c1.d = c2.d = d;
    for (std::size_t i = 0; i < n; ++i) {
        auto& cloud = dataset.labels[i] == 1 ? c1 : c2;
        cloud.coords.insert(cloud.coords.end(), coords[i].begin(), coords[i].end());
        ++cloud.n;
    }
    return {std::move(c1), std::move(c2)};
}

double cdi(const PointCloud& cloud1, const PointCloud& cloud2, int k,
           double distance_floor) {
    if (cloud1.d != cloud2.d || cloud1.d == 0)
        throw Error("cdi: clouds must share a positive dimension");
    if (cloud1.n < 2 || cloud2.n < 2)
        throw InsufficientDataError("cdi: each class needs at least 2 points");
    if (k < 1 || cloud1.n - 1 < static_cast<std::size_t>(k) ||
        cloud2.n < static_cast<std::size_t>(k))
        throw InsufficientDataError("cdi: neighbour order k exceeds the available points");

    const KdTree same(cloud1);
    const KdTree cross(cloud2);
    const auto n1 = cloud1.n;
    double sum = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        const double* q = cloud1.point(i);
        const double lam_same = std::max(same.knn_distance(q, k, i), distance_floor);
        const double lam_cross = std::max(cross.knn_distance(q, k, KdTree::npos), distance_floor);
        sum += std::log2(lam_cross / lam_same);
    }
    const double d = static_cast<double>(cloud1.d);
    return d / static_cast<double>(n1) * sum +
           std::log2(static_cast<double>(cloud2.n) / static_cast<double>(n1 - 1));
}

DivergenceEstimate estimate(const DatasetTable& dataset, const EstimatorConfig& config) {
    dataset.validate();
    if (dataset.n1() < 2 || dataset.n2() < 2)
        throw InsufficientDataError("estimate: both classes need at least 2 rows");
    if (config.repeats_m < 1) throw Error("estimate: repeats_m must be >= 1");

    DivergenceEstimate out;
    out.config = config;
    out.repeats_m = config.repeats_m;
    for (int r = 0; r < config.repeats_m; ++r) {
        EstimatorConfig replicate = config;
        replicate.seed = config.seed + static_cast<std::uint64_t>(r);
        const auto [c1, c2] = jitter_encode(dataset, replicate);
        out.replicates12.push_back(cdi(c1, c2, config.neighbor_order_k, config.distance_floor));
        out.replicates21.push_back(cdi(c2, c1, config.neighbor_order_k, config.distance_floor));
    }
    const auto mean = [](const std::vector<double>& v) {
        return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    };
    const auto stderr_of_mean = [&](const std::vector<double>& v, double m) {
        if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
        double ss = 0;
        for (double x : v) ss += (x - m) * (x - m);
        return std::sqrt(ss / (v.size() - 1) / v.size());
    };
    out.cdi12 = mean(out.replicates12);
    out.cdi21 = mean(out.replicates21);
    out.se12 = stderr_of_mean(out.replicates12, out.cdi12);
    out.se21 = stderr_of_mean(out.replicates21, out.cdi21);
    if (out.cdi12 > 0.0 && out.cdi21 > 0.0) {
        out.cdr = resistor_average(out.cdi12, out.cdi21);
        out.cdr_defined = true;
    } else {
        out.cdr = std::numeric_limits<double>::quiet_NaN();
        out.cdr_defined = false;
    }
    return out;
}

} // namespace classlim
