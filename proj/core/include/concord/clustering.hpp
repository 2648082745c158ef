#ifndef CONCORD_CLUSTERING_HPP
#define CONCORD_CLUSTERING_HPP

#include <cstdint>
#include <vector>

#include "concord/matrix.hpp"
#include "concord/partition.hpp"

namespace concord {

/// Numeric data set, n objects x p features.
struct Dataset {
    Matrix points;

    explicit Dataset(Matrix m);

    std::size_t n() const { return points.rows(); }
    std::size_t p() const { return points.cols(); }
};

/// Z-scored copy (per-feature mean 0, sd 1; constant features left centered).
Dataset standardized(const Dataset& data);

struct ClusteringConfig {
    int k = 2;
    int max_iter = 300;
    double tol = 1e-6;        // center-shift convergence threshold
    std::uint64_t seed = 0;
    double fuzzifier = 2.0;   // FCM exponent, > 1
    int n_init = 5;           // restarts, best kept by objective

    void validate() const;
};

struct FcmResult {
    FuzzyPartition partition;
    Matrix centers;
    double objective = 0.0;
    std::vector<double> objective_history;  // per accepted iteration
    int iterations = 0;
    bool converged = false;
};

/// Fuzzy C-means with Euclidean distance: memberships
/// w_ik = 1 / sum_t (d_ik / d_it)^(2/(fuzzifier-1)), centers as
/// fuzzifier-weighted means. Memberships start from a seeded
/// Dirichlet(1,...,1); best of n_init restarts by final objective.
FcmResult fcm(const Dataset& data, const ClusteringConfig& cfg);

/// Probabilistic-distance memberships for fixed centers:
///   p_k(x) = prod_{j != k} d_j(x) / sum_t prod_{j != t} d_j(x),
/// Euclidean d. A point at zero distance from some center takes the
/// indicator of those centers (uniformly split over ties).
FuzzyPartition pd_membership(const Dataset& data, const Matrix& centers);

/// "True" fuzzy partition of labeled data: per-class mean centers, then
/// pd_membership against them.
FuzzyPartition true_fuzzy_partition(const Dataset& data, const CrispPartition& labels);

struct PdResult {
    FuzzyPartition partition;
    Matrix centers;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// PD-clustering: alternates pd_membership with the weighted center update
/// u_k = sum_x w_k(x) x / sum_x w_k(x), w_k(x) = p_k(x)^2 / d_k(x), until the
/// center shift drops below tol. Centers are seeded k-means++ style and
/// moved to their assignment means once before iterating, since a center
/// sitting exactly on a data point is a fixed point of the update. Best of
/// n_init restarts by the PD objective sum_x p_k(x) d_k(x); k = 1 returns
/// the grand mean directly.
PdResult pd_cluster(const Dataset& data, const ClusteringConfig& cfg);

struct KmeansResult {
    CrispPartition labels;
    Matrix centers;
    double inertia = 0.0;
    std::vector<double> inertia_history;  // per accepted iteration
    int iterations = 0;
    bool converged = false;
};

/// Lloyd k-means, k-means++ seeding, Euclidean distance. An emptied cluster
/// is re-seeded at the point farthest from its assigned center.
KmeansResult kmeans(const Dataset& data, const ClusteringConfig& cfg);

}  // namespace concord

#endif
