#include "concord/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "concord/parallel.hpp"
#include "concord/rng.hpp"

namespace concord {

Dataset::Dataset(Matrix m) : points(std::move(m)) {
    if (points.rows() == 0 || points.cols() == 0)
        throw std::invalid_argument("Dataset: empty matrix");
    if (!points.all_finite()) throw std::invalid_argument("Dataset: non-finite values");
}

Dataset standardized(const Dataset& data) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    Matrix out(n, p);
    for (std::size_t j = 0; j < p; ++j) {
        CompensatedSum sum;
        for (std::size_t i = 0; i < n; ++i) sum.add(data.points(i, j));
        const double mean = sum.value() / static_cast<double>(n);
        CompensatedSum ss;
        for (std::size_t i = 0; i < n; ++i) {
            const double diff = data.points(i, j) - mean;
            ss.add(diff * diff);
        }
        const double sd = n > 1 ? std::sqrt(ss.value() / static_cast<double>(n - 1)) : 0.0;
        const double scale = sd > 0.0 ? 1.0 / sd : 1.0;
        for (std::size_t i = 0; i < n; ++i) out(i, j) = (data.points(i, j) - mean) * scale;
    }
    return Dataset(std::move(out));
}

void ClusteringConfig::validate() const {
    if (k < 1) throw std::invalid_argument("ClusteringConfig: k must be >= 1");
    if (max_iter < 1) throw std::invalid_argument("ClusteringConfig: max_iter must be >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("ClusteringConfig: tol must be >= 0");
    if (!(fuzzifier > 1.0)) throw std::invalid_argument("ClusteringConfig: fuzzifier must be > 1");
    if (n_init < 1) throw std::invalid_argument("ClusteringConfig: n_init must be >= 1");
}

namespace {

void check_k_fits(const Dataset& data, const ClusteringConfig& cfg) {
    cfg.validate();
    if (static_cast<std::size_t>(cfg.k) > data.n())
        throw std::invalid_argument("more clusters than objects: k = " + std::to_string(cfg.k) +
                                    ", n = " + std::to_string(data.n()));
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

double max_center_shift(const Matrix& before, const Matrix& after) {
    double worst = 0.0;
    for (std::size_t c = 0; c < before.rows(); ++c)
        worst = std::max(worst, std::sqrt(sq_dist(before.row(c), after.row(c))));
    return worst;
}

Matrix kmeanspp_centers(const Dataset& data, int k, Rng& rng) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    Matrix centers(static_cast<std::size_t>(k), p);

    const std::size_t first = rng.next_below(n);
    for (std::size_t j = 0; j < p; ++j) centers(0, j) = data.points(first, j);

    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], sq_dist(data.points.row(i), centers.row(c - 1)));
            total += d2[i];
        }
        std::size_t pick = n - 1;
        if (total > 0.0) {
            const double r = rng.next_double() * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cum += d2[i];
                if (cum > r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.next_below(n);
        }
        for (std::size_t j = 0; j < p; ++j)
            centers(static_cast<std::size_t>(c), j) = data.points(pick, j);
    }
    return centers;
}

/// Membership row for one object given squared distances to every center.
/// exponent = 1 / (fuzzifier - 1), applied to squared-distance ratios.
void fcm_row(std::span<const double> d2, double exponent, std::span<double> out) {
    const std::size_t k = d2.size();
    double dmin = d2[0];
    for (double v : d2) dmin = std::min(dmin, v);
    if (dmin == 0.0) {
        std::size_t ties = 0;
        for (double v : d2)
            if (v == 0.0) ++ties;
        for (std::size_t c = 0; c < k; ++c)
            out[c] = d2[c] == 0.0 ? 1.0 / static_cast<double>(ties) : 0.0;
        return;
    }
    double sum = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        out[c] = std::pow(dmin / d2[c], exponent);
        sum += out[c];
    }
    for (std::size_t c = 0; c < k; ++c) out[c] /= sum;
}

Matrix fcm_memberships(const Dataset& data, const Matrix& centers, double fuzzifier) {
    const std::size_t n = data.n();
    const std::size_t k = centers.rows();
    const double exponent = 1.0 / (fuzzifier - 1.0);
    Matrix w(n, k);
    std::vector<double> d2(k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < k; ++c) d2[c] = sq_dist(data.points.row(i), centers.row(c));
        fcm_row(d2, exponent, w.row(i));
    }
    return w;
}

Matrix fcm_centers(const Dataset& data, const Matrix& w, double fuzzifier, Rng& rng,
                   const Matrix* previous) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    const std::size_t k = w.cols();
    Matrix centers(k, p);
    for (std::size_t c = 0; c < k; ++c) {
        double den = 0.0;
        std::vector<double> num(p, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double weight = std::pow(w(i, c), fuzzifier);
            den += weight;
            for (std::size_t j = 0; j < p; ++j) num[j] += weight * data.points(i, j);
        }
        if (den > 0.0) {
            for (std::size_t j = 0; j < p; ++j) centers(c, j) = num[j] / den;
        } else if (previous != nullptr) {
            for (std::size_t j = 0; j < p; ++j) centers(c, j) = (*previous)(c, j);
        } else {
            const std::size_t pick = rng.next_below(n);
            for (std::size_t j = 0; j < p; ++j) centers(c, j) = data.points(pick, j);
        }
    }
    return centers;
}

double fcm_objective(const Dataset& data, const Matrix& w, const Matrix& centers,
                     double fuzzifier) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < data.n(); ++i)
        for (std::size_t c = 0; c < centers.rows(); ++c)
            sum.add(std::pow(w(i, c), fuzzifier) * sq_dist(data.points.row(i), centers.row(c)));
    return sum.value();
}

struct FcmRun {
    Matrix w;
    Matrix centers;
    double objective = 0.0;
    std::vector<double> history;
    int iterations = 0;
    bool converged = false;
};

FcmRun fcm_once(const Dataset& data, const ClusteringConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = data.n();

    Matrix w(n, static_cast<std::size_t>(cfg.k));
    for (std::size_t i = 0; i < n; ++i) rng.dirichlet_row(w.row(i));

    FcmRun run;
    run.centers = fcm_centers(data, w, cfg.fuzzifier, rng, nullptr);
    for (int it = 1; it <= cfg.max_iter; ++it) {
        w = fcm_memberships(data, run.centers, cfg.fuzzifier);
        Matrix next = fcm_centers(data, w, cfg.fuzzifier, rng, &run.centers);
        run.history.push_back(fcm_objective(data, w, next, cfg.fuzzifier));
        const double shift = max_center_shift(run.centers, next);
        run.centers = std::move(next);
        run.iterations = it;
        if (shift <= cfg.tol) {
            run.converged = true;
            break;
        }
    }
    run.w = std::move(w);
    run.objective = run.history.back();
    return run;
}

/// Probabilistic-distance memberships as a raw matrix; distances are plain
/// Euclidean. The scaling by the smallest distance keeps the ratios in (0, 1]
/// so no intermediate product can overflow.
Matrix pd_matrix(const Dataset& data, const Matrix& centers) {
    if (centers.rows() == 0) throw std::invalid_argument("pd_membership: no centers");
    if (centers.cols() != data.p())
        throw std::invalid_argument("pd_membership: center dimension " +
                                    std::to_string(centers.cols()) + " does not match data " +
                                    std::to_string(data.p()));
    if (!centers.all_finite()) throw std::invalid_argument("pd_membership: non-finite centers");

    const std::size_t n = data.n();
    const std::size_t k = centers.rows();
    Matrix w(n, k);
    std::vector<double> d(k);
    for (std::size_t i = 0; i < n; ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            d[c] = std::sqrt(sq_dist(data.points.row(i), centers.row(c)));
            dmin = std::min(dmin, d[c]);
        }
        if (dmin == 0.0) {
            std::size_t ties = 0;
            for (double v : d)
                if (v == 0.0) ++ties;
            for (std::size_t c = 0; c < k; ++c)
                w(i, c) = d[c] == 0.0 ? 1.0 / static_cast<double>(ties) : 0.0;
        } else {
            double sum = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                w(i, c) = dmin / d[c];
                sum += w(i, c);
            }
            for (std::size_t c = 0; c < k; ++c) w(i, c) /= sum;
        }
    }
    return w;
}

/// Joint distance at each object is p_k d_k, identical across k; zero when
/// the object sits on a center.
double pd_objective(const Dataset& data, const Matrix& centers) {
    const std::size_t k = centers.rows();
    std::vector<double> d(k);
    CompensatedSum total;
    for (std::size_t i = 0; i < data.n(); ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            d[c] = std::sqrt(sq_dist(data.points.row(i), centers.row(c)));
            dmin = std::min(dmin, d[c]);
        }
        if (dmin == 0.0) continue;
        double inv = 0.0;
        for (std::size_t c = 0; c < k; ++c) inv += dmin / d[c];
        total.add(dmin / inv);
    }
    return total.value();
}

struct PdRun {
    Matrix centers;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

// One hard-assignment mean pass. Seeds picked by kmeans++ are data points,
// which are fixed points of the membership-weighted update below; replacing
// each seed with its Voronoi cell mean starts the iteration off the data.
void lloyd_refine(const Dataset& data, Matrix& centers) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    const std::size_t k = centers.rows();
    Matrix sums(k, p);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            const double d = sq_dist(data.points.row(i), centers.row(c));
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        ++counts[best];
        for (std::size_t j = 0; j < p; ++j) sums(best, j) += data.points(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        for (std::size_t j = 0; j < p; ++j)
            centers(c, j) = sums(c, j) / static_cast<double>(counts[c]);
    }
}

PdRun pd_once(const Dataset& data, const ClusteringConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    const std::size_t k = static_cast<std::size_t>(cfg.k);

    PdRun run;
    if (k == 1) {
        run.centers = Matrix(1, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j) run.centers(0, j) += data.points(i, j);
        for (std::size_t j = 0; j < p; ++j) run.centers(0, j) /= static_cast<double>(n);
        run.converged = true;
        run.objective = pd_objective(data, run.centers);
        return run;
    }
    run.centers = kmeanspp_centers(data, cfg.k, rng);
    lloyd_refine(data, run.centers);
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const Matrix w = pd_matrix(data, run.centers);
        Matrix next(k, p);
        for (std::size_t c = 0; c < k; ++c) {
            // Weighted Weiszfeld step. Points lying exactly on the center are
            // anchors: the center moves toward the free-point target only if
            // their pull exceeds the combined anchor weight (Vardi-Zhang rule),
            // otherwise the center really is stationary.
            double den = 0.0;
            double anchor = 0.0;
            std::vector<double> num(p, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double dist = std::sqrt(sq_dist(data.points.row(i), run.centers.row(c)));
                if (dist == 0.0) {
                    anchor += w(i, c) * w(i, c);
                    continue;
                }
                const double weight = w(i, c) * w(i, c) / dist;
                den += weight;
                for (std::size_t j = 0; j < p; ++j) num[j] += weight * data.points(i, j);
            }
            if (den == 0.0) {
                for (std::size_t j = 0; j < p; ++j) next(c, j) = run.centers(c, j);
                continue;
            }
            std::vector<double> target(p);
            double pull_sq = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                target[j] = num[j] / den;
                const double diff = target[j] - run.centers(c, j);
                pull_sq += diff * diff;
            }
            const double pull = den * std::sqrt(pull_sq);
            const double stay = pull > 0.0 ? std::min(1.0, anchor / pull) : 1.0;
            for (std::size_t j = 0; j < p; ++j)
                next(c, j) = (1.0 - stay) * target[j] + stay * run.centers(c, j);
        }
        const double shift = max_center_shift(run.centers, next);
        run.centers = std::move(next);
        run.iterations = it;
        if (shift <= cfg.tol) {
            run.converged = true;
            break;
        }
    }
    run.objective = pd_objective(data, run.centers);
    return run;
}

struct KmeansRun {
    std::vector<int> labels;
    Matrix centers;
    double inertia = 0.0;
    std::vector<double> history;
    int iterations = 0;
    bool converged = false;
};

KmeansRun kmeans_once(const Dataset& data, const ClusteringConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    const std::size_t k = static_cast<std::size_t>(cfg.k);

    KmeansRun run;
    run.centers = kmeanspp_centers(data, cfg.k, rng);
    run.labels.assign(n, -1);
    std::vector<double> d2closest(n, 0.0);
    std::vector<std::size_t> counts(k, 0);

    for (int it = 1; it <= cfg.max_iter; ++it) {
        bool changed = false;
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d2 = sq_dist(data.points.row(i), run.centers.row(0));
            for (std::size_t c = 1; c < k; ++c) {
                const double d2 = sq_dist(data.points.row(i), run.centers.row(c));
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best = static_cast<int>(c);
                }
            }
            if (run.labels[i] != best) {
                run.labels[i] = best;
                changed = true;
            }
            d2closest[i] = best_d2;
            ++counts[static_cast<std::size_t>(best)];
        }

        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            std::size_t far = n;
            double far_d2 = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[static_cast<std::size_t>(run.labels[i])] < 2) continue;
                if (d2closest[i] > far_d2) {
                    far_d2 = d2closest[i];
                    far = i;
                }
            }
            if (far == n) continue;
            --counts[static_cast<std::size_t>(run.labels[far])];
            run.labels[far] = static_cast<int>(c);
            ++counts[c];
            d2closest[far] = 0.0;
            changed = true;
        }

        Matrix next(k, p);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(run.labels[i]);
            for (std::size_t j = 0; j < p; ++j) next(c, j) += data.points(i, j);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                for (std::size_t j = 0; j < p; ++j) next(c, j) = run.centers(c, j);
                continue;
            }
            for (std::size_t j = 0; j < p; ++j) next(c, j) /= static_cast<double>(counts[c]);
        }

        CompensatedSum inertia;
        for (std::size_t i = 0; i < n; ++i)
            inertia.add(sq_dist(data.points.row(i),
                                next.row(static_cast<std::size_t>(run.labels[i]))));
        run.history.push_back(inertia.value());

        const double shift = max_center_shift(run.centers, next);
        run.centers = std::move(next);
        run.iterations = it;
        if (!changed || shift <= cfg.tol) {
            run.converged = true;
            break;
        }
    }
    run.inertia = run.history.back();
    return run;
}

}  // namespace

FcmResult fcm(const Dataset& data, const ClusteringConfig& cfg) {
    check_k_fits(data, cfg);
    FcmRun best;
    bool have_best = false;
    for (int r = 0; r < cfg.n_init; ++r) {
        FcmRun run = fcm_once(data, cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        if (!have_best || run.objective < best.objective) {
            best = std::move(run);
            have_best = true;
        }
    }
    return FcmResult{FuzzyPartition(std::move(best.w)), std::move(best.centers), best.objective,
                     std::move(best.history), best.iterations, best.converged};
}

FuzzyPartition pd_membership(const Dataset& data, const Matrix& centers) {
    return FuzzyPartition(pd_matrix(data, centers));
}

FuzzyPartition true_fuzzy_partition(const Dataset& data, const CrispPartition& labels) {
    if (labels.size() != data.n())
        throw std::invalid_argument("true_fuzzy_partition: label count " +
                                    std::to_string(labels.size()) + " does not match data " +
                                    std::to_string(data.n()));
    const auto k = static_cast<std::size_t>(labels.clusters());
    const std::size_t p = data.p();
    Matrix centers(k, p);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < data.n(); ++i) {
        const auto c = static_cast<std::size_t>(labels.labels()[i]);
        ++counts[c];
        for (std::size_t j = 0; j < p; ++j) centers(c, j) += data.points(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0)
            throw std::invalid_argument("true_fuzzy_partition: class " + std::to_string(c) +
                                        " has no objects");
        for (std::size_t j = 0; j < p; ++j) centers(c, j) /= static_cast<double>(counts[c]);
    }
    return pd_membership(data, centers);
}

PdResult pd_cluster(const Dataset& data, const ClusteringConfig& cfg) {
    check_k_fits(data, cfg);
    PdRun best;
    bool have_best = false;
    for (int r = 0; r < cfg.n_init; ++r) {
        PdRun run = pd_once(data, cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        if (!have_best || run.objective < best.objective) {
            best = std::move(run);
            have_best = true;
        }
    }
    Matrix w = pd_matrix(data, best.centers);
    return PdResult{FuzzyPartition(std::move(w)), std::move(best.centers), best.objective,
                    best.iterations, best.converged};
}

KmeansResult kmeans(const Dataset& data, const ClusteringConfig& cfg) {
    check_k_fits(data, cfg);
    KmeansRun best;
    bool have_best = false;
    for (int r = 0; r < cfg.n_init; ++r) {
        KmeansRun run = kmeans_once(data, cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        if (!have_best || run.inertia < best.inertia) {
            best = std::move(run);
            have_best = true;
        }
    }
    return KmeansResult{CrispPartition(std::move(best.labels), cfg.k), std::move(best.centers),
                        best.inertia, std::move(best.history), best.iterations, best.converged};
}

}  // namespace concord
