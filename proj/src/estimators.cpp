#include "mint/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "mint/shannon.hpp"

namespace mint {

namespace {

double digamma(double x) { return boost::math::digamma(x); }

void check_variables(std::span<const std::size_t> variables, std::size_t width,
                     const char* what) {
    if (variables.empty()) throw std::invalid_argument(std::string(what) + " is empty");
    std::vector<std::size_t> seen(variables.begin(), variables.end());
    std::sort(seen.begin(), seen.end());
    if (seen.back() >= width) throw std::invalid_argument("variable index out of range");
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw std::invalid_argument("repeated variable index");
    }
}

void check_disjoint(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    for (std::size_t x : a) {
        for (std::size_t y : b) {
            if (x == y) throw std::invalid_argument("variable groups overlap");
        }
    }
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& cov, std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                cov(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
        }
    }
    return out;
}

void check_model(const GaussianModel& model) {
    const Eigen::Index n = model.mean.size();
    if (n == 0) throw std::invalid_argument("empty model");
    if (model.covariance.rows() != n || model.covariance.cols() != n) {
        throw std::invalid_argument("covariance shape does not match the mean");
    }
    const double scale = std::max(1.0, model.covariance.cwiseAbs().maxCoeff());
    if ((model.covariance - model.covariance.transpose()).cwiseAbs().maxCoeff() >
        1e-9 * scale) {
        throw std::invalid_argument("covariance is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.covariance);
    if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
        throw std::invalid_argument("covariance is not positive semidefinite");
    }
}

// log det of a PD matrix via Cholesky; throws when singular.
double log_det_pd(const Eigen::MatrixXd& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("singular covariance block");
    }
    const Eigen::MatrixXd l = llt.matrixL();
    double out = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) out += std::log(l(i, i));
    return 2.0 * out;
}

double log_gaussian_density(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                            const Eigen::VectorXd& point) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("singular covariance block");
    }
    const Eigen::VectorXd diff = point - mean;
    const double quad = diff.dot(llt.solve(diff));
    double log_det = 0.0;
    const Eigen::MatrixXd l = llt.matrixL();
    for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += std::log(l(i, i));
    const double d = static_cast<double>(mean.size());
    return -0.5 * (d * std::log(2.0 * std::acos(-1.0)) + quad) - log_det;
}

// Row-major point block over the selected series columns, jittered on duplicates.
struct PointSet {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> values;  // n x d

    double at(std::size_t i, std::size_t dim) const { return values[i * d + dim]; }

    double distance(std::size_t i, std::size_t j, std::size_t lo, std::size_t hi) const {
        double best = 0.0;
        for (std::size_t dim = lo; dim < hi; ++dim) {
            best = std::max(best, std::abs(at(i, dim) - at(j, dim)));
        }
        return best;
    }
};

bool rows_equal(const PointSet& pts, std::size_t i, std::size_t j) {
    for (std::size_t dim = 0; dim < pts.d; ++dim) {
        if (pts.at(i, dim) != pts.at(j, dim)) return false;
    }
    return true;
}

bool detect_duplicates(const PointSet& pts) {
    std::vector<std::size_t> order(pts.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t dim = 0; dim < pts.d; ++dim) {
            if (pts.at(a, dim) != pts.at(b, dim)) return pts.at(a, dim) < pts.at(b, dim);
        }
        return false;
    });
    for (std::size_t i = 1; i < pts.n; ++i) {
        if (rows_equal(pts, order[i - 1], order[i])) return true;
    }
    return false;
}

PointSet gather_points(const ContinuousSeries& series,
                       std::span<const std::size_t> columns, std::uint64_t jitter_seed) {
    PointSet pts;
    pts.n = series.length;
    pts.d = columns.size();
    pts.values.resize(pts.n * pts.d);
    for (std::size_t t = 0; t < pts.n; ++t) {
        for (std::size_t c = 0; c < pts.d; ++c) {
            pts.values[t * pts.d + c] = series.at(t, columns[c]);
        }
    }
    if (!detect_duplicates(pts)) return pts;

    std::vector<double> amplitude(pts.d);
    for (std::size_t c = 0; c < pts.d; ++c) {
        double lo = pts.at(0, c), hi = pts.at(0, c);
        for (std::size_t t = 1; t < pts.n; ++t) {
            lo = std::min(lo, pts.at(t, c));
            hi = std::max(hi, pts.at(t, c));
        }
        const double range = hi - lo;
        amplitude[c] = 1e-10 * (range > 0.0 ? range : std::max(1.0, std::abs(hi)));
    }
    std::mt19937_64 rng(jitter_seed);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    for (std::size_t t = 0; t < pts.n; ++t) {
        for (std::size_t c = 0; c < pts.d; ++c) {
            pts.values[t * pts.d + c] += amplitude[c] * noise(rng);
        }
    }
    return pts;
}

// Space-partitioning tree over one contiguous dim range of a PointSet, used
// above kBruteThreshold points; below it every query scans linearly. Both
// paths compute the same distances, so results agree exactly.
constexpr std::size_t kBruteThreshold = 512;

class NeighborIndex {
  public:
    NeighborIndex(const PointSet& pts, std::size_t lo, std::size_t hi)
        : pts_(pts), lo_(lo), hi_(hi) {
        if (pts_.n <= kBruteThreshold) return;
        order_.resize(pts_.n);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        nodes_.reserve(2 * pts_.n / kLeafSize + 2);
        build(0, pts_.n);
    }

    // Indices of the k nearest points to point qi, self excluded.
    std::vector<std::size_t> nearest(std::size_t qi, std::size_t k) const {
        // heap of (distance, index), largest distance on top
        std::vector<std::pair<double, std::size_t>> heap;
        heap.reserve(k + 1);
        auto offer = [&](std::size_t j) {
            if (j == qi) return;
            const double dist = pts_.distance(qi, j, lo_, hi_);
            if (heap.size() == k && dist >= heap.front().first) return;
            heap.emplace_back(dist, j);
            std::push_heap(heap.begin(), heap.end());
            if (heap.size() > k) {
                std::pop_heap(heap.begin(), heap.end());
                heap.pop_back();
            }
        };
        if (nodes_.empty()) {
            for (std::size_t j = 0; j < pts_.n; ++j) offer(j);
        } else {
            search(0, qi, k, heap, offer);
        }
        std::vector<std::size_t> out;
        out.reserve(heap.size());
        for (const auto& [dist, j] : heap) out.push_back(j);
        return out;
    }

    // Number of points within radius of point qi (strict or inclusive), self excluded.
    std::size_t count_within(std::size_t qi, double radius, bool inclusive) const {
        if (nodes_.empty()) {
            std::size_t count = 0;
            for (std::size_t j = 0; j < pts_.n; ++j) {
                if (j == qi) continue;
                const double dist = pts_.distance(qi, j, lo_, hi_);
                if (inclusive ? dist <= radius : dist < radius) ++count;
            }
            return count;
        }
        // the query point itself always matches, drop it from the tally
        return count_node(0, qi, radius, inclusive) - 1;
    }

  private:
    static constexpr std::size_t kLeafSize = 16;

    struct Node {
        std::size_t begin = 0, end = 0;
        std::vector<double> box_lo, box_hi;
        std::size_t left = 0, right = 0;  // 0 means leaf
    };

    std::size_t build(std::size_t begin, std::size_t end) {
        const std::size_t id = nodes_.size();
        nodes_.emplace_back();
        Node& node = nodes_.back();
        node.begin = begin;
        node.end = end;
        const std::size_t width = hi_ - lo_;
        node.box_lo.assign(width, std::numeric_limits<double>::infinity());
        node.box_hi.assign(width, -std::numeric_limits<double>::infinity());
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t dim = 0; dim < width; ++dim) {
                const double v = pts_.at(order_[i], lo_ + dim);
                node.box_lo[dim] = std::min(node.box_lo[dim], v);
                node.box_hi[dim] = std::max(node.box_hi[dim], v);
            }
        }
        if (end - begin <= kLeafSize) return id;

        std::size_t split_dim = 0;
        double best_span = -1.0;
        for (std::size_t dim = 0; dim < width; ++dim) {
            const double span = nodes_[id].box_hi[dim] - nodes_[id].box_lo[dim];
            if (span > best_span) {
                best_span = span;
                split_dim = dim;
            }
        }
        const std::size_t mid = (begin + end) / 2;
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                         order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t a, std::size_t b) {
                             return pts_.at(a, lo_ + split_dim) < pts_.at(b, lo_ + split_dim);
                         });
        const std::size_t left = build(begin, mid);
        const std::size_t right = build(mid, end);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    double box_min_dist(const Node& node, std::size_t qi) const {
        double best = 0.0;
        for (std::size_t dim = 0; dim < hi_ - lo_; ++dim) {
            const double v = pts_.at(qi, lo_ + dim);
            if (v < node.box_lo[dim]) best = std::max(best, node.box_lo[dim] - v);
            if (v > node.box_hi[dim]) best = std::max(best, v - node.box_hi[dim]);
        }
        return best;
    }

    double box_max_dist(const Node& node, std::size_t qi) const {
        double best = 0.0;
        for (std::size_t dim = 0; dim < hi_ - lo_; ++dim) {
            const double v = pts_.at(qi, lo_ + dim);
            best = std::max(best, std::max(std::abs(v - node.box_lo[dim]),
                                           std::abs(v - node.box_hi[dim])));
        }
        return best;
    }

    template <typename Offer>
    void search(std::size_t id, std::size_t qi, std::size_t k,
                std::vector<std::pair<double, std::size_t>>& heap, Offer&& offer) const {
        const Node& node = nodes_[id];
        if (heap.size() == k && box_min_dist(node, qi) >= heap.front().first) return;
        if (node.left == 0) {
            for (std::size_t i = node.begin; i < node.end; ++i) offer(order_[i]);
            return;
        }
        const double dl = box_min_dist(nodes_[node.left], qi);
        const double dr = box_min_dist(nodes_[node.right], qi);
        const std::size_t first = dl <= dr ? node.left : node.right;
        const std::size_t second = dl <= dr ? node.right : node.left;
        search(first, qi, k, heap, offer);
        search(second, qi, k, heap, offer);
    }

    std::size_t count_node(std::size_t id, std::size_t qi, double radius,
                           bool inclusive) const {
        const Node& node = nodes_[id];
        const double lo = box_min_dist(node, qi);
        if (inclusive ? lo > radius : lo >= radius) return 0;
        const double hi = box_max_dist(node, qi);
        if (inclusive ? hi <= radius : hi < radius) return node.end - node.begin;
        if (node.left == 0) {
            std::size_t count = 0;
            for (std::size_t i = node.begin; i < node.end; ++i) {
                const double dist = pts_.distance(qi, order_[i], lo_, hi_);
                if (inclusive ? dist <= radius : dist < radius) ++count;
            }
            return count;
        }
        return count_node(node.left, qi, radius, inclusive) +
               count_node(node.right, qi, radius, inclusive);
    }

    const PointSet& pts_;
    std::size_t lo_, hi_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
};

void check_knn(const ContinuousSeries& series, std::size_t n_selected,
               const KnnConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("neighbor count must be at least 1");
    if (series.length < cfg.k + 1) {
        throw std::invalid_argument("need more samples than neighbors");
    }
    (void)n_selected;
}

void check_not_constant(const ContinuousSeries& series,
                        std::span<const std::size_t> columns) {
    for (std::size_t c : columns) {
        const double first = series.at(0, c);
        bool varies = false;
        for (std::size_t t = 1; t < series.length; ++t) {
            if (series.at(t, c) != first) {
                varies = true;
                break;
            }
        }
        if (!varies) throw std::invalid_argument("constant input column");
    }
}

std::vector<std::size_t> concat_columns(std::initializer_list<std::span<const std::size_t>> parts) {
    std::vector<std::size_t> out;
    for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

// Per-point KSG MI summands; blocks are dim ranges [0, da) and [da, da+db).
std::vector<double> ksg_mi_terms(const PointSet& pts, std::size_t da, std::size_t db,
                                 std::size_t k, int variant) {
    const std::size_t n = pts.n;
    NeighborIndex joint(pts, 0, da + db);
    NeighborIndex block_a(pts, 0, da);
    NeighborIndex block_b(pts, da, da + db);

    std::vector<double> terms(n);
    const double psi_k = digamma(static_cast<double>(k));
    const double psi_n = digamma(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<std::size_t> neighbors = joint.nearest(i, k);
        if (variant == 1) {
            double eps = 0.0;
            for (std::size_t j : neighbors) {
                eps = std::max(eps, pts.distance(i, j, 0, da + db));
            }
            const auto n_a = block_a.count_within(i, eps, false);
            const auto n_b = block_b.count_within(i, eps, false);
            terms[i] = psi_k - digamma(static_cast<double>(n_a + 1)) -
                       digamma(static_cast<double>(n_b + 1)) + psi_n;
        } else {
            double eps_a = 0.0, eps_b = 0.0;
            for (std::size_t j : neighbors) {
                eps_a = std::max(eps_a, pts.distance(i, j, 0, da));
                eps_b = std::max(eps_b, pts.distance(i, j, da, da + db));
            }
            const auto n_a = block_a.count_within(i, eps_a, true);
            const auto n_b = block_b.count_within(i, eps_b, true);
            terms[i] = psi_k - 1.0 / static_cast<double>(k) -
                       digamma(static_cast<double>(n_a)) -
                       digamma(static_cast<double>(n_b)) + psi_n;
        }
    }
    return terms;
}

// Conditional variant; dim layout [a | b | z] with z possibly wider than one.
std::vector<double> ksg_cmi_terms(const PointSet& pts, std::size_t da, std::size_t db,
                                  std::size_t dz, std::size_t k, int variant) {
    const std::size_t n = pts.n;
    const std::size_t total = da + db + dz;
    NeighborIndex joint(pts, 0, total);

    // contiguous blocks: az needs a reshuffled copy so each index sees one range
    PointSet az;
    az.n = n;
    az.d = da + dz;
    az.values.resize(n * az.d);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t dim = 0; dim < da; ++dim) az.values[t * az.d + dim] = pts.at(t, dim);
        for (std::size_t dim = 0; dim < dz; ++dim) {
            az.values[t * az.d + da + dim] = pts.at(t, da + db + dim);
        }
    }
    NeighborIndex block_az(az, 0, az.d);
    NeighborIndex block_bz(pts, da, total);
    NeighborIndex block_z(pts, da + db, total);

    std::vector<double> terms(n);
    const double psi_k = digamma(static_cast<double>(k));
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<std::size_t> neighbors = joint.nearest(i, k);
        if (variant == 1) {
            double eps = 0.0;
            for (std::size_t j : neighbors) eps = std::max(eps, pts.distance(i, j, 0, total));
            const auto n_az = block_az.count_within(i, eps, false);
            const auto n_bz = block_bz.count_within(i, eps, false);
            const auto n_z = block_z.count_within(i, eps, false);
            terms[i] = psi_k - digamma(static_cast<double>(n_az + 1)) -
                       digamma(static_cast<double>(n_bz + 1)) +
                       digamma(static_cast<double>(n_z + 1));
        } else {
            double eps_az = 0.0, eps_bz = 0.0, eps_z = 0.0;
            for (std::size_t j : neighbors) {
                const double dist_a = pts.distance(i, j, 0, da);
                const double dist_b = pts.distance(i, j, da, da + db);
                const double dist_z = pts.distance(i, j, da + db, total);
                eps_az = std::max(eps_az, std::max(dist_a, dist_z));
                eps_bz = std::max(eps_bz, std::max(dist_b, dist_z));
                eps_z = std::max(eps_z, dist_z);
            }
            const auto n_az = block_az.count_within(i, eps_az, true);
            const auto n_bz = block_bz.count_within(i, eps_bz, true);
            const auto n_z = block_z.count_within(i, eps_z, true);
            terms[i] = psi_k - 2.0 / static_cast<double>(k) -
                       digamma(static_cast<double>(n_az)) +
                       1.0 / static_cast<double>(n_az) -
                       digamma(static_cast<double>(n_bz)) +
                       1.0 / static_cast<double>(n_bz) +
                       digamma(static_cast<double>(n_z));
        }
    }
    return terms;
}

void check_variant(int variant) {
    if (variant != 1 && variant != 2) throw std::invalid_argument("variant must be 1 or 2");
}

double mean_of(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

}  // namespace

double plugin_entropy(const DiscreteSeries& series, std::span<const std::size_t> variables,
                      double base) {
    if (series.length == 0) throw std::invalid_argument("empty series");
    check_variables(variables, series.width, "variable selection");
    return entropy(from_series(series, variables), base);
}

double miller_madow(double estimate, std::size_t occupied, std::size_t samples,
                    double base) {
    if (occupied < 1) throw std::invalid_argument("occupied state count must be positive");
    if (samples < 1) throw std::invalid_argument("sample count must be positive");
    const double correction_nats =
        static_cast<double>(occupied - 1) / (2.0 * static_cast<double>(samples));
    return estimate + correction_nats / std::log(base);
}

double miller_madow_entropy(const DiscreteSeries& series,
                            std::span<const std::size_t> variables, double base) {
    if (series.length == 0) throw std::invalid_argument("empty series");
    check_variables(variables, series.width, "variable selection");
    const JointDistribution dist = from_series(series, variables);
    return miller_madow(entropy(dist, base), dist.table().size(), series.length, base);
}

GaussianModel fit_gaussian(const ContinuousSeries& series) {
    if (series.length < 2) throw std::invalid_argument("need at least two samples");
    const auto n = static_cast<Eigen::Index>(series.length);
    const auto d = static_cast<Eigen::Index>(series.width);
    Eigen::MatrixXd data(n, d);
    for (Eigen::Index t = 0; t < n; ++t) {
        for (Eigen::Index c = 0; c < d; ++c) {
            data(t, c) = series.at(static_cast<std::size_t>(t), static_cast<std::size_t>(c));
        }
    }
    GaussianModel model;
    model.mean = data.colwise().mean();
    const Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
    model.covariance =
        centered.transpose() * centered / static_cast<double>(series.length - 1);
    for (Eigen::Index c = 0; c < d; ++c) {
        if (model.covariance(c, c) <= 0.0) {
            throw std::invalid_argument("constant input column");
        }
    }
    return model;
}

double gaussian_entropy(const GaussianModel& model, std::span<const std::size_t> variables) {
    check_model(model);
    check_variables(variables, static_cast<std::size_t>(model.mean.size()), "selection");
    const Eigen::MatrixXd sub = submatrix(model.covariance, variables, variables);
    const double d = static_cast<double>(variables.size());
    const double two_pi_e = 2.0 * std::acos(-1.0) * std::exp(1.0);
    return 0.5 * (d * std::log(two_pi_e) + log_det_pd(sub));
}

double gaussian_mi(const GaussianModel& model, std::span<const std::size_t> a,
                   std::span<const std::size_t> b) {
    check_model(model);
    const auto width = static_cast<std::size_t>(model.mean.size());
    check_variables(a, width, "first group");
    check_variables(b, width, "second group");
    check_disjoint(a, b);
    const double log_det_a = log_det_pd(submatrix(model.covariance, a, a));
    const double log_det_b = log_det_pd(submatrix(model.covariance, b, b));
    const std::vector<std::size_t> joint = concat_columns({a, b});
    const double log_det_ab = log_det_pd(submatrix(model.covariance, joint, joint));
    return 0.5 * (log_det_a + log_det_b - log_det_ab);
}

double gaussian_mi(const ContinuousSeries& series, std::span<const std::size_t> a,
                   std::span<const std::size_t> b) {
    return gaussian_mi(fit_gaussian(series), a, b);
}

double gaussian_conditional_mi(const GaussianModel& model, std::span<const std::size_t> a,
                               std::span<const std::size_t> b,
                               std::span<const std::size_t> given) {
    if (given.empty()) return gaussian_mi(model, a, b);
    check_model(model);
    const auto width = static_cast<std::size_t>(model.mean.size());
    check_variables(a, width, "first group");
    check_variables(b, width, "second group");
    check_variables(given, width, "conditioning group");
    check_disjoint(a, b);
    check_disjoint(a, given);
    check_disjoint(b, given);
    const std::vector<std::size_t> ag = concat_columns({a, given});
    const std::vector<std::size_t> bg = concat_columns({b, given});
    const std::vector<std::size_t> abg = concat_columns({a, b, given});
    return gaussian_entropy(model, ag) + gaussian_entropy(model, bg) -
           gaussian_entropy(model, abg) - gaussian_entropy(model, given);
}

double local_gaussian_mi(const GaussianModel& model, std::span<const std::size_t> a,
                         std::span<const std::size_t> b, std::span<const double> point) {
    check_model(model);
    const auto width = static_cast<std::size_t>(model.mean.size());
    check_variables(a, width, "first group");
    check_variables(b, width, "second group");
    check_disjoint(a, b);
    if (point.size() != width) throw std::invalid_argument("point width mismatch");

    auto pick = [&](std::span<const std::size_t> cols) {
        Eigen::VectorXd mean(static_cast<Eigen::Index>(cols.size()));
        Eigen::VectorXd values(static_cast<Eigen::Index>(cols.size()));
        for (std::size_t i = 0; i < cols.size(); ++i) {
            mean(static_cast<Eigen::Index>(i)) =
                model.mean(static_cast<Eigen::Index>(cols[i]));
            values(static_cast<Eigen::Index>(i)) = point[cols[i]];
        }
        return std::pair{mean, values};
    };
    const std::vector<std::size_t> joint = concat_columns({a, b});
    const auto [mean_ab, point_ab] = pick(joint);
    const auto [mean_a, point_a] = pick(a);
    const auto [mean_b, point_b] = pick(b);
    return log_gaussian_density(mean_ab, submatrix(model.covariance, joint, joint),
                                point_ab) -
           log_gaussian_density(mean_a, submatrix(model.covariance, a, a), point_a) -
           log_gaussian_density(mean_b, submatrix(model.covariance, b, b), point_b);
}

bool has_duplicate_points(const ContinuousSeries& series,
                          std::span<const std::size_t> variables) {
    check_variables(variables, series.width, "variable selection");
    if (series.length == 0) return false;
    return detect_duplicates(gather_points(series, variables, 0));
}

std::vector<double> local_kl_entropy(const ContinuousSeries& series,
                                     std::span<const std::size_t> variables,
                                     const KnnConfig& cfg) {
    check_variables(variables, series.width, "variable selection");
    check_knn(series, variables.size(), cfg);
    const PointSet pts = gather_points(series, variables, cfg.jitter_seed);
    NeighborIndex index(pts, 0, pts.d);

    const double psi_k = digamma(static_cast<double>(cfg.k));
    const double psi_n = digamma(static_cast<double>(pts.n));
    const double d = static_cast<double>(pts.d);
    std::vector<double> locals(pts.n);
    for (std::size_t i = 0; i < pts.n; ++i) {
        const std::vector<std::size_t> neighbors = index.nearest(i, cfg.k);
        double radius = 0.0;
        for (std::size_t j : neighbors) {
            radius = std::max(radius, pts.distance(i, j, 0, pts.d));
        }
        locals[i] = -psi_k + psi_n + d * std::log(2.0 * radius);
    }
    return locals;
}

double kl_entropy(const ContinuousSeries& series, std::span<const std::size_t> variables,
                  const KnnConfig& cfg) {
    return mean_of(local_kl_entropy(series, variables, cfg));
}

std::vector<double> local_ksg_mi(const ContinuousSeries& series,
                                 std::span<const std::size_t> a,
                                 std::span<const std::size_t> b, const KnnConfig& cfg,
                                 int variant) {
    check_variant(variant);
    check_variables(a, series.width, "first group");
    check_variables(b, series.width, "second group");
    check_disjoint(a, b);
    check_knn(series, a.size() + b.size(), cfg);
    check_not_constant(series, a);
    check_not_constant(series, b);
    const std::vector<std::size_t> columns = concat_columns({a, b});
    const PointSet pts = gather_points(series, columns, cfg.jitter_seed);
    return ksg_mi_terms(pts, a.size(), b.size(), cfg.k, variant);
}

double ksg_mi(const ContinuousSeries& series, std::span<const std::size_t> a,
              std::span<const std::size_t> b, const KnnConfig& cfg, int variant) {
    return mean_of(local_ksg_mi(series, a, b, cfg, variant));
}

std::vector<double> local_ksg_conditional_mi(const ContinuousSeries& series,
                                             std::span<const std::size_t> a,
                                             std::span<const std::size_t> b,
                                             std::span<const std::size_t> given,
                                             const KnnConfig& cfg, int variant) {
    if (given.empty()) return local_ksg_mi(series, a, b, cfg, variant);
    check_variant(variant);
    check_variables(a, series.width, "first group");
    check_variables(b, series.width, "second group");
    check_variables(given, series.width, "conditioning group");
    check_disjoint(a, b);
    check_disjoint(a, given);
    check_disjoint(b, given);
    check_knn(series, a.size() + b.size() + given.size(), cfg);
    check_not_constant(series, a);
    check_not_constant(series, b);
    check_not_constant(series, given);
    const std::vector<std::size_t> columns = concat_columns({a, b, given});
    const PointSet pts = gather_points(series, columns, cfg.jitter_seed);
    return ksg_cmi_terms(pts, a.size(), b.size(), given.size(), cfg.k, variant);
}

double ksg_conditional_mi(const ContinuousSeries& series, std::span<const std::size_t> a,
                          std::span<const std::size_t> b,
                          std::span<const std::size_t> given, const KnnConfig& cfg,
                          int variant) {
    return mean_of(local_ksg_conditional_mi(series, a, b, given, cfg, variant));
}

}  // namespace mint
