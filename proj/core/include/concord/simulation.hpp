#ifndef CONCORD_SIMULATION_HPP
#define CONCORD_SIMULATION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "concord/clustering.hpp"
#include "concord/expectation.hpp"
#include "concord/matrix.hpp"
#include "concord/partition.hpp"

namespace concord {

/// Gaussian mixture with per-component diagonal covariance. A scalar scale
/// alpha stands for covariance alpha * I.
struct GaussianMixtureSpec {
    std::vector<std::vector<double>> means;     // K x p
    std::vector<std::vector<double>> cov_diag;  // K x p diagonal entries
    std::size_t total_n = 0;                    // split as evenly as possible
    std::uint64_t seed = 0;

    static GaussianMixtureSpec isotropic(std::vector<std::vector<double>> means,
                                         double alpha, std::size_t total_n,
                                         std::uint64_t seed);

    void validate() const;
};

/// Draws the mixture; rows are grouped by component, labels are the
/// generating component. total_n is split evenly with the remainder going to
/// the leading components.
std::pair<Dataset, CrispPartition> gen_mixture(const GaussianMixtureSpec& spec);

struct StudyRow {
    std::string design;
    std::string index;
    double value = 0.0;
};

struct NamedMatrix {
    std::string name;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Matrix values;
};

/// Table-shaped study output plus the run metadata needed to re-run it.
struct StudyResult {
    std::string study;
    std::vector<StudyRow> rows;
    std::vector<NamedMatrix> matrices;
    std::map<std::string, std::string> metadata;

    /// First row matching (design, index); throws if absent.
    double value(const std::string& design, const std::string& index) const;
};

/// Fuzzy-vs-crisp study: bivariate mixtures with 2..4 centers at three
/// variance levels plus three unstructured controls, FCM at the true C,
/// NDC and ACI against the stored crisp truth.
StudyResult study1(std::uint64_t seed, const ExpectationConfig& expectation = {});

/// Fuzzy-vs-fuzzy study: seven bivariate mixtures with C=2..8 centers
/// (n=120), FCM at C=2..8 on each; emits 7x7 NDC and ACI matrices comparing
/// each solution with the one at the data set's true C. With vs_truth the
/// comparison baseline is the crisp ground truth instead.
StudyResult study2(std::uint64_t seed, const ExpectationConfig& expectation = {},
                   bool vs_truth = false);

struct LabeledDataset {
    std::string name;
    Dataset data;
    CrispPartition labels;
};

/// Estimated-vs-true study: for each labeled data set, the true fuzzy
/// partition (per-class centers + PD memberships) is compared against itself
/// and against the PD-clustering solution at the known C. include_synthetic
/// prepends the study-1 designs and unstructured controls.
StudyResult study3(std::uint64_t seed, const std::vector<LabeledDataset>& datasets = {},
                   const ExpectationConfig& expectation = {}, bool include_synthetic = true);

struct BiasRanges {
    std::size_t n_min = 100, n_max = 1200;
    int c_min = 2, c_max = 10;
    std::size_t p_min = 2, p_max = 10;
    double alpha_min = 0.1, alpha_max = 3.0;
};

struct BiasResult {
    double mean_diff = 0.0;  // mean(ACI - ARI)
    StudyResult detail;
};

/// ARI-vs-ACI bias experiment: random mixtures, k-means at the true C, both
/// indices on the hard labels against the stored truth. With closed-form
/// expectation the per-data-set difference is zero to rounding.
BiasResult bias_experiment(std::size_t n_datasets, std::uint64_t seed,
                           const ExpectationConfig& expectation = {},
                           const BiasRanges& ranges = {});

}  // namespace concord

#endif
