#include "concord/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "concord/crisp_indices.hpp"
#include "concord/fuzzy_concordance.hpp"
#include "concord/parallel.hpp"
#include "concord/rng.hpp"

namespace concord {

GaussianMixtureSpec GaussianMixtureSpec::isotropic(std::vector<std::vector<double>> means,
                                                   double alpha, std::size_t total_n,
                                                   std::uint64_t seed) {
    GaussianMixtureSpec spec;
    if (means.empty()) throw std::invalid_argument("mixture needs at least one component");
    const std::size_t p = means.front().size();
    spec.cov_diag.assign(means.size(), std::vector<double>(p, alpha));
    spec.means = std::move(means);
    spec.total_n = total_n;
    spec.seed = seed;
    spec.validate();
    return spec;
}

void GaussianMixtureSpec::validate() const {
    if (means.empty()) throw std::invalid_argument("mixture needs at least one component");
    const std::size_t p = means.front().size();
    if (p == 0) throw std::invalid_argument("mixture components need at least one dimension");
    if (cov_diag.size() != means.size())
        throw std::invalid_argument("mixture has " + std::to_string(means.size()) +
                                    " means but " + std::to_string(cov_diag.size()) +
                                    " covariance rows");
    for (std::size_t k = 0; k < means.size(); ++k) {
        if (means[k].size() != p || cov_diag[k].size() != p)
            throw std::invalid_argument("mixture component " + std::to_string(k) +
                                        " has inconsistent dimension");
        for (double v : cov_diag[k])
            if (!(v > 0.0))
                throw std::invalid_argument("mixture component " + std::to_string(k) +
                                            " has non-positive variance");
    }
    if (total_n < means.size())
        throw std::invalid_argument("mixture needs at least one point per component");
}

std::pair<Dataset, CrispPartition> gen_mixture(const GaussianMixtureSpec& spec) {
    spec.validate();
    const std::size_t K = spec.means.size();
    const std::size_t p = spec.means.front().size();

    std::vector<std::size_t> counts(K, spec.total_n / K);
    for (std::size_t k = 0; k < spec.total_n % K; ++k) ++counts[k];

    Rng rng(spec.seed);
    Matrix points(spec.total_n, p);
    std::vector<int> labels(spec.total_n);
    std::size_t row = 0;
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<double> sd(p);
        for (std::size_t j = 0; j < p; ++j) sd[j] = std::sqrt(spec.cov_diag[k][j]);
        for (std::size_t i = 0; i < counts[k]; ++i, ++row) {
            labels[row] = static_cast<int>(k);
            for (std::size_t j = 0; j < p; ++j)
                points(row, j) = spec.means[k][j] + sd[j] * rng.next_gaussian();
        }
    }
    return {Dataset(std::move(points)), CrispPartition(std::move(labels), static_cast<int>(K))};
}

double StudyResult::value(const std::string& design, const std::string& index) const {
    for (const StudyRow& row : rows)
        if (row.design == design && row.index == index) return row.value;
    throw std::invalid_argument("no study row (" + design + ", " + index + ")");
}

namespace {

const std::vector<std::vector<double>> mixture_means = {
    {-2.0, -2.0}, {2.0, 2.0}, {0.0, 0.0}, {-2.0, 2.0},
    {2.0, -2.0},  {-4.0, 4.0}, {4.0, -4.0}, {9.0, 9.0},
};

std::vector<std::vector<double>> leading_means(std::size_t c) {
    return {mixture_means.begin(), mixture_means.begin() + c};
}

ExpectationConfig with_seed(const ExpectationConfig& base, std::uint64_t seed) {
    ExpectationConfig cfg = base;
    cfg.seed = seed;
    return cfg;
}

void common_metadata(StudyResult& out, std::uint64_t seed, const ExpectationConfig& expectation) {
    out.metadata["seed"] = std::to_string(seed);
    out.metadata["expectation_mode"] = to_string(expectation.mode);
    if (expectation.mode == ExpectationMode::monte_carlo)
        out.metadata["h"] = std::to_string(expectation.h);
    out.metadata["split"] = "even, remainder to leading components";
}

}  // namespace

StudyResult study1(std::uint64_t seed, const ExpectationConfig& expectation) {
    expectation.validate();
    StudyResult out;
    out.study = "study1";
    common_metadata(out, seed, expectation);
    out.metadata["n"] = "100";
    out.metadata["algorithm"] = "fcm, fuzzifier 2, n_init 5";

    struct Design {
        std::string name;
        std::vector<std::vector<double>> means;
        double alpha;
        int k;
    };
    std::vector<Design> designs;
    const double sigma_levels[3] = {0.01, 0.25, 1.0};
    for (int c = 2; c <= 4; ++c)
        for (int s = 1; s <= 3; ++s)
            designs.push_back({std::to_string(c) + " Centers, Sigma" + std::to_string(s),
                               leading_means(static_cast<std::size_t>(c)), sigma_levels[s - 1],
                               c});
    for (int c = 2; c <= 4; ++c)
        designs.push_back({"Random " + std::to_string(c) + " Centers",
                           std::vector<std::vector<double>>(static_cast<std::size_t>(c),
                                                            {0.0, 0.0}),
                           0.8, c});

    for (std::size_t i = 0; i < designs.size(); ++i) {
        const Design& d = designs[i];
        const auto spec = GaussianMixtureSpec::isotropic(d.means, d.alpha, 100,
                                                         derive_seed(seed, 3 * i));
        auto [data, truth] = gen_mixture(spec);

        ClusteringConfig ccfg;
        ccfg.k = d.k;
        ccfg.seed = derive_seed(seed, 3 * i + 1);
        const FcmResult sol = fcm(data, ccfg);

        const ComparisonResult res =
            aci(from_labels(truth), sol.partition,
                with_seed(expectation, derive_seed(seed, 3 * i + 2)));
        out.rows.push_back({d.name, "ndc", res.ndc});
        out.rows.push_back({d.name, "aci", res.aci});
    }
    return out;
}

StudyResult study2(std::uint64_t seed, const ExpectationConfig& expectation, bool vs_truth) {
    expectation.validate();
    StudyResult out;
    out.study = "study2";
    common_metadata(out, seed, expectation);
    out.metadata["n"] = "120";
    out.metadata["algorithm"] = "fcm, fuzzifier 2, n_init 5";
    out.metadata["baseline"] = vs_truth ? "crisp truth" : "fcm at true C";

    constexpr int c_lo = 2;
    constexpr int c_hi = 8;
    constexpr std::size_t span = static_cast<std::size_t>(c_hi - c_lo + 1);

    std::vector<std::string> labels(span);
    for (std::size_t i = 0; i < span; ++i) labels[i] = "C=" + std::to_string(c_lo + static_cast<int>(i));

    NamedMatrix ndc_m{"ndc", labels, labels, Matrix(span, span)};
    NamedMatrix aci_m{"aci", labels, labels, Matrix(span, span)};

    for (std::size_t d = 0; d < span; ++d) {
        const int true_c = c_lo + static_cast<int>(d);
        Rng alpha_rng(derive_seed(seed, 100 * d));
        const double a1 = alpha_rng.next_uniform(0.1, 1.0);
        const double a2 = alpha_rng.next_uniform(0.1, 1.0);

        GaussianMixtureSpec spec;
        spec.means = leading_means(static_cast<std::size_t>(true_c));
        spec.cov_diag.assign(spec.means.size(), {a1, a2});
        spec.total_n = 120;
        spec.seed = derive_seed(seed, 100 * d + 1);
        auto [data, truth] = gen_mixture(spec);

        std::vector<FuzzyPartition> solutions;
        solutions.reserve(span);
        for (std::size_t j = 0; j < span; ++j) {
            ClusteringConfig ccfg;
            ccfg.k = c_lo + static_cast<int>(j);
            ccfg.seed = derive_seed(seed, 100 * d + 2 + j);
            solutions.push_back(fcm(data, ccfg).partition);
        }

        const FuzzyPartition baseline = vs_truth ? from_labels(truth) : solutions[d];
        const EquivalenceMatrix base_eq = equivalence_matrix(baseline);
        for (std::size_t j = 0; j < span; ++j) {
            const ComparisonResult res =
                aci(base_eq, equivalence_matrix(solutions[j]),
                    with_seed(expectation, derive_seed(seed, 100 * d + 50 + j)));
            ndc_m.values(d, j) = res.ndc;
            aci_m.values(d, j) = res.aci;
        }
    }
    out.matrices.push_back(std::move(ndc_m));
    out.matrices.push_back(std::move(aci_m));
    return out;
}

StudyResult study3(std::uint64_t seed, const std::vector<LabeledDataset>& datasets,
                   const ExpectationConfig& expectation, bool include_synthetic) {
    expectation.validate();
    StudyResult out;
    out.study = "study3";
    common_metadata(out, seed, expectation);
    out.metadata["algorithm"] = "pd_cluster, n_init 5";

    std::size_t idx = 0;
    auto run_case = [&](const std::string& name, const Dataset& data,
                        const CrispPartition& truth) {
        const FuzzyPartition true_fuzzy = true_fuzzy_partition(data, truth);

        ClusteringConfig ccfg;
        ccfg.k = truth.clusters();
        ccfg.seed = derive_seed(seed, 4 * idx + 1);
        const PdResult est = pd_cluster(data, ccfg);

        const EquivalenceMatrix true_eq = equivalence_matrix(true_fuzzy);
        const ComparisonResult self =
            aci(true_eq, true_eq, with_seed(expectation, derive_seed(seed, 4 * idx + 2)));
        const ComparisonResult cross =
            aci(true_eq, equivalence_matrix(est.partition),
                with_seed(expectation, derive_seed(seed, 4 * idx + 3)));

        out.rows.push_back({name, "ndc_true_true", self.ndc});
        out.rows.push_back({name, "aci_true_true", self.aci});
        out.rows.push_back({name, "ndc_true_estimated", cross.ndc});
        out.rows.push_back({name, "aci_true_estimated", cross.aci});
        ++idx;
    };

    if (include_synthetic) {
        const double sigma_levels[3] = {0.01, 0.25, 1.0};
        for (int c = 2; c <= 4; ++c)
            for (int s = 1; s <= 3; ++s) {
                const auto spec = GaussianMixtureSpec::isotropic(
                    leading_means(static_cast<std::size_t>(c)), sigma_levels[s - 1], 100,
                    derive_seed(seed, 4 * idx));
                auto [data, truth] = gen_mixture(spec);
                run_case(std::to_string(c) + " Centers, Sigma" + std::to_string(s), data, truth);
            }
        for (int c = 2; c <= 4; ++c) {
            const auto spec = GaussianMixtureSpec::isotropic(
                std::vector<std::vector<double>>(static_cast<std::size_t>(c), {0.0, 0.0}), 0.8,
                100, derive_seed(seed, 4 * idx));
            auto [data, truth] = gen_mixture(spec);
            run_case("Random " + std::to_string(c) + " Centers", data, truth);
        }
    }
    for (const LabeledDataset& ds : datasets) run_case(ds.name, ds.data, ds.labels);
    return out;
}

BiasResult bias_experiment(std::size_t n_datasets, std::uint64_t seed,
                           const ExpectationConfig& expectation, const BiasRanges& ranges) {
    if (n_datasets == 0) throw std::invalid_argument("bias_experiment: need at least one data set");
    if (ranges.n_min < 2 || ranges.n_max < ranges.n_min || ranges.c_min < 2 ||
        ranges.c_max < ranges.c_min || ranges.p_min < 1 || ranges.p_max < ranges.p_min ||
        !(ranges.alpha_min > 0.0) || ranges.alpha_max < ranges.alpha_min)
        throw std::invalid_argument("bias_experiment: malformed ranges");
    expectation.validate();

    struct Cell {
        double ari = 0.0;
        double aci = 0.0;
    };
    std::vector<Cell> cells(n_datasets);
    std::vector<double> diffs(n_datasets, 0.0);

    parallel_for(n_datasets, [&](std::size_t i) {
        const std::uint64_t base = derive_seed(seed, i);
        Rng setup(base);
        const std::size_t n =
            ranges.n_min + setup.next_below(ranges.n_max - ranges.n_min + 1);
        const int c = ranges.c_min +
                      static_cast<int>(setup.next_below(
                          static_cast<std::uint64_t>(ranges.c_max - ranges.c_min + 1)));
        const std::size_t p =
            ranges.p_min + setup.next_below(ranges.p_max - ranges.p_min + 1);
        const double alpha = setup.next_uniform(ranges.alpha_min, ranges.alpha_max);

        std::vector<std::vector<double>> means(static_cast<std::size_t>(c),
                                               std::vector<double>(p));
        for (auto& mean : means)
            for (double& v : mean) v = setup.next_uniform(-5.0, 5.0);

        const auto spec = GaussianMixtureSpec::isotropic(
            std::move(means), alpha, std::max<std::size_t>(n, static_cast<std::size_t>(c)),
            derive_seed(base, 1));
        auto [data, truth] = gen_mixture(spec);

        ClusteringConfig kcfg;
        kcfg.k = c;
        kcfg.seed = derive_seed(base, 2);
        const KmeansResult km = kmeans(data, kcfg);

        cells[i].ari = ari_cardinals(pair_counts(truth, km.labels));
        const ComparisonResult res = aci(from_labels(truth), from_labels(km.labels),
                                         with_seed(expectation, derive_seed(base, 3)));
        cells[i].aci = res.aci;
        diffs[i] = res.aci - cells[i].ari;
    });

    BiasResult out;
    out.mean_diff = pairwise_sum(diffs) / static_cast<double>(n_datasets);
    out.detail.study = "bias";
    common_metadata(out.detail, seed, expectation);
    out.detail.metadata["n_datasets"] = std::to_string(n_datasets);
    out.detail.metadata["algorithm"] = "kmeans, n_init 5";
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", out.mean_diff);
        out.detail.metadata["mean_diff"] = buf;
    }
    for (std::size_t i = 0; i < n_datasets; ++i) {
        const std::string name = "dataset " + std::to_string(i + 1);
        out.detail.rows.push_back({name, "ari", cells[i].ari});
        out.detail.rows.push_back({name, "aci", cells[i].aci});
        out.detail.rows.push_back({name, "diff", diffs[i]});
    }
    return out;
}

}  // namespace concord
