#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <concord/rng.hpp>
#include <concord/simulation.hpp>

using namespace concord;

TEST_SUITE("simulation") {

TEST_CASE("mixture spec validation") {
    GaussianMixtureSpec spec = GaussianMixtureSpec::isotropic({{0.0, 0.0}, {1.0, 1.0}}, 0.5,
                                                              10, 1);
    CHECK_NOTHROW(spec.validate());
    spec.cov_diag[1][0] = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

    GaussianMixtureSpec ragged;
    ragged.means = {{0.0, 0.0}, {1.0}};
    ragged.cov_diag = {{1.0, 1.0}, {1.0, 1.0}};
    ragged.total_n = 10;
    CHECK_THROWS_AS(ragged.validate(), std::invalid_argument);

    // the factory validates, so fewer points than components fails at construction
    CHECK_THROWS_AS(GaussianMixtureSpec::isotropic({{0.0}, {1.0}, {2.0}}, 1.0, 2, 0),
                    std::invalid_argument);
}

TEST_CASE("sample counts split evenly with the remainder up front") {
    const auto [data, truth] =
        gen_mixture(GaussianMixtureSpec::isotropic({{0.0}, {10.0}, {20.0}}, 0.01, 10, 4));
    CHECK(data.n() == 10);
    std::vector<int> counts(3, 0);
    for (int l : truth.labels()) ++counts[static_cast<std::size_t>(l)];
    CHECK(counts[0] == 4);
    CHECK(counts[1] == 3);
    CHECK(counts[2] == 3);
    // rows arrive grouped by component
    for (std::size_t i = 1; i < truth.size(); ++i)
        CHECK(truth.labels()[i] >= truth.labels()[i - 1]);
}

TEST_CASE("generated sample respects the requested moments") {
    const double alpha = 0.49;
    const auto [data, truth] = gen_mixture(
        GaussianMixtureSpec::isotropic({{2.0, -1.0}}, alpha, 100000, 99));
    for (std::size_t j = 0; j < 2; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < data.n(); ++i) mean += data.points(i, j);
        mean /= static_cast<double>(data.n());
        CHECK(std::abs(mean - (j == 0 ? 2.0 : -1.0)) < 0.05);
        double var = 0.0;
        for (std::size_t i = 0; i < data.n(); ++i) {
            const double d = data.points(i, j) - mean;
            var += d * d;
        }
        var /= static_cast<double>(data.n() - 1);
        CHECK(std::abs(var - alpha) / alpha < 0.05);
    }
}

TEST_CASE("mixture draws are reproducible per seed") {
    const auto spec = GaussianMixtureSpec::isotropic({{0.0, 0.0}, {3.0, 3.0}}, 1.0, 40, 123);
    const auto [d1, t1] = gen_mixture(spec);
    const auto [d2, t2] = gen_mixture(spec);
    CHECK(d1.points == d2.points);
    CHECK(t1 == t2);
}

TEST_CASE("fuzzy versus crisp study has the documented shape") {
    const StudyResult res = study1(7);
    CHECK(res.study == "study1");
    CHECK(res.rows.size() == 24);  // 12 designs x {ndc, aci}
    CHECK_NOTHROW(res.value("2 Centers, Sigma1", "ndc"));
    CHECK_NOTHROW(res.value("Random 4 Centers", "aci"));
    CHECK_THROWS_AS(res.value("5 Centers, Sigma1", "ndc"), std::invalid_argument);
    for (const auto& row : res.rows) {
        CHECK(row.value <= 1.0 + 1e-12);
        CHECK(row.value >= -1.0 - 1e-12);
    }
    CHECK(res.metadata.count("seed") == 1);
}

TEST_CASE("study runs are reproducible") {
    const StudyResult a = study1(101);
    const StudyResult b = study1(101);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].design == b.rows[i].design);
        CHECK(a.rows[i].value == b.rows[i].value);
    }
    const StudyResult c = study1(102);
    bool any_different = false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if (a.rows[i].value != c.rows[i].value) any_different = true;
    CHECK(any_different);
}

TEST_CASE("fuzzy versus fuzzy study emits unit diagonal matrices") {
    const StudyResult res = study2(5);
    REQUIRE(res.matrices.size() == 2);
    for (const auto& mat : res.matrices) {
        CHECK(mat.values.rows() == 7);
        CHECK(mat.values.cols() == 7);
        CHECK(mat.row_labels.size() == 7);
        for (std::size_t d = 0; d < 7; ++d) CHECK(mat.values(d, d) == 1.0);
    }
}

TEST_CASE("truth baseline variant compares against hard labels") {
    const StudyResult res = study2(5, {}, true);
    REQUIRE(res.matrices.size() == 2);
    CHECK(res.metadata.at("baseline") != study2(5).metadata.at("baseline"));
    // self column no longer compares identical partitions, so no unit diagonal
    bool any_off_unit = false;
    for (std::size_t d = 0; d < 7; ++d)
        if (res.matrices[0].values(d, d) != 1.0) any_off_unit = true;
    CHECK(any_off_unit);
}

TEST_CASE("estimated versus reference study scores self agreement as one") {
    Rng rng(55);
    Matrix pts(24, 2);
    std::vector<int> labels(24);
    for (std::size_t i = 0; i < 24; ++i) {
        const bool second = i >= 12;
        pts(i, 0) = (second ? 4.0 : 0.0) + 0.5 * rng.next_gaussian();
        pts(i, 1) = (second ? 4.0 : 0.0) + 0.5 * rng.next_gaussian();
        labels[i] = second ? 1 : 0;
    }
    const std::vector<LabeledDataset> data{{
        "toy",
        Dataset(std::move(pts)),
        CrispPartition(std::move(labels)),
    }};
    const StudyResult res = study3(3, data, {}, false);
    CHECK(res.value("toy", "ndc_true_true") == 1.0);
    CHECK(res.value("toy", "aci_true_true") == 1.0);
    CHECK(res.value("toy", "ndc_true_estimated") > 0.9);
    CHECK(res.value("toy", "aci_true_estimated") > 0.7);
}

TEST_CASE("synthetic designs piggyback on the estimated versus reference study") {
    const StudyResult res = study3(9);
    CHECK(res.rows.size() == 12 * 4);
    CHECK(res.value("2 Centers, Sigma1", "ndc_true_true") == 1.0);
    CHECK(res.value("2 Centers, Sigma1", "ndc_true_estimated") >= 0.95);
}

TEST_CASE("bias run with exact expectation matches the hard index per dataset") {
    BiasRanges ranges;
    ranges.n_min = 60;
    ranges.n_max = 120;
    ranges.c_max = 4;
    ranges.p_max = 3;
    const BiasResult res = bias_experiment(5, 17, {}, ranges);
    CHECK(std::abs(res.mean_diff) <= 1e-10);
    CHECK(res.detail.rows.size() == 15);  // ari, aci, diff per dataset
    for (const auto& row : res.detail.rows)
        if (row.index == "diff") CHECK(std::abs(row.value) <= 1e-10);
    CHECK(res.detail.metadata.count("mean_diff") == 1);
}

TEST_CASE("bias run rejects nonsense ranges") {
    BiasRanges ranges;
    ranges.n_min = 0;
    CHECK_THROWS_AS(bias_experiment(2, 1, {}, ranges), std::invalid_argument);
    ranges = {};
    ranges.alpha_min = -1.0;
    CHECK_THROWS_AS(bias_experiment(2, 1, {}, ranges), std::invalid_argument);
    ranges = {};
    ranges.c_min = 5;
    ranges.c_max = 3;
    CHECK_THROWS_AS(bias_experiment(2, 1, {}, ranges), std::invalid_argument);
}

}
