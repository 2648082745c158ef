#include <doctest.h>

#include <cmath>
#include <vector>

#include <concord/crisp_indices.hpp>
#include <concord/fuzzy_concordance.hpp>
#include <concord/rng.hpp>

using namespace concord;

namespace {

FuzzyPartition random_fuzzy(Rng& rng, std::size_t n, std::size_t k) {
    Matrix w(n, k);
    for (std::size_t i = 0; i < n; ++i) rng.dirichlet_row(w.row(i));
    return FuzzyPartition(std::move(w));
}

CrispPartition random_crisp(Rng& rng, std::size_t n, int k_max) {
    const int k = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k_max - 1)));
    std::vector<int> labels(n);
    for (auto& l : labels) l = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
    return CrispPartition(std::move(labels), k);
}

const FuzzyPartition toy_p(Matrix::from_rows(
    {{0.29, 0.71}, {0.79, 0.21}, {0.41, 0.59}, {0.88, 0.12}}));
const FuzzyPartition toy_q(Matrix::from_rows(
    {{0.94, 0.06}, {0.05, 0.95}, {0.53, 0.47}, {0.89, 0.11}}));

}  // namespace

TEST_SUITE("fuzzy_concordance") {

TEST_CASE("pair concordance is one minus the equivalence gap") {
    CHECK(concordance_degree(0.9, 0.6) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(concordance_degree(0.2, 0.2) == 1.0);
    CHECK(concordance_degree(1.0, 0.0) == 0.0);
}

TEST_CASE("ndc of the four object soft example") {
    const auto e_p = equivalence_matrix(toy_p);
    const auto e_q = equivalence_matrix(toy_q);
    CHECK(std::abs(ndc(e_p, e_q) - 0.6367) <= 5e-3);
}

TEST_CASE("ndc reduces to the Rand index on hard partitions") {
    Rng rng(13);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 4 + rng.next_below(40);
        const CrispPartition p = random_crisp(rng, n, 6);
        const CrispPartition q = random_crisp(rng, n, 6);
        const double soft = ndc(equivalence_matrix(from_labels(p)),
                                equivalence_matrix(from_labels(q)));
        const double hard = rand_index(pair_counts(p, q));
        CHECK(std::abs(soft - hard) <= 1e-12);
    }
}

TEST_CASE("single pair cardinal split") {
    // eP = 0.9, eQ = 0.6: conc = 0.7, product 0.54
    FuzzyPartition p(Matrix::from_rows({{0.95, 0.05}, {0.85, 0.15}}));
    const auto e_p = equivalence_matrix(p);
    REQUIRE(e_p.upper_tri()[0] == doctest::Approx(0.9).epsilon(1e-12));
    FuzzyPartition q(Matrix::from_rows({{0.8, 0.2}, {0.4, 0.6}}));
    const auto e_q = equivalence_matrix(q);
    REQUIRE(e_q.upper_tri()[0] == doctest::Approx(0.6).epsilon(1e-12));

    const PairCardinals pc = fuzzy_cardinals(e_p, e_q);
    CHECK(pc.m == 1);
    CHECK(pc.a == doctest::Approx(0.378).epsilon(1e-9));
    CHECK(pc.b == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(pc.c == doctest::Approx(0.0));
    CHECK(pc.d == doctest::Approx(0.322).epsilon(1e-9));
}

TEST_CASE("cardinals of hard partitions are the pair counts") {
    CrispPartition p({0, 0, 1, 0});
    CrispPartition q({0, 1, 1, 0});
    const PairCardinals pc =
        fuzzy_cardinals(equivalence_matrix(from_labels(p)), equivalence_matrix(from_labels(q)));
    CHECK(pc.a == 1.0);
    CHECK(pc.b == 2.0);
    CHECK(pc.c == 1.0);
    CHECK(pc.d == 2.0);
}

TEST_CASE("cardinals sum to the pair count") {
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 3 + rng.next_below(20);
        const auto e_p = equivalence_matrix(random_fuzzy(rng, n, 3));
        const auto e_q = equivalence_matrix(random_fuzzy(rng, n, 4));
        const PairCardinals pc = fuzzy_cardinals(e_p, e_q);
        CHECK(std::abs(pc.a + pc.b + pc.c + pc.d - static_cast<double>(pc.m)) <= 1e-9);
    }
}

TEST_CASE("per pair breakdown is kept only on request") {
    const auto e_p = equivalence_matrix(toy_p);
    const auto e_q = equivalence_matrix(toy_q);
    CHECK_FALSE(fuzzy_cardinals(e_p, e_q).per_pair.has_value());
    const PairCardinals pc = fuzzy_cardinals(e_p, e_q, true);
    REQUIRE(pc.per_pair.has_value());
    CHECK(pc.per_pair->a.size() == pc.m);
    for (std::size_t t = 0; t < pc.m; ++t) {
        const double row_sum = pc.per_pair->a[t] + pc.per_pair->b[t] + pc.per_pair->c[t] +
                               pc.per_pair->d[t];
        CHECK(row_sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("cardinal index map mirrors ndc through the rand entry") {
    const auto e_p = equivalence_matrix(toy_p);
    const auto e_q = equivalence_matrix(toy_q);
    const auto indices = cardinal_indices(fuzzy_cardinals(e_p, e_q));
    CHECK(indices.at("rand") == doctest::Approx(ndc(e_p, e_q)).epsilon(1e-12));
    CHECK(indices.count("jaccard") == 1);
    CHECK(indices.count("mirkin") == 1);
}

TEST_CASE("comparison of the soft example end to end") {
    const ComparisonResult res =
        aci(toy_p, toy_q, {.mode = ExpectationMode::enumeration});
    CHECK(res.n == 4);
    CHECK(res.m == 6);
    CHECK(std::abs(res.ndc - 0.6367) <= 5e-3);
    CHECK(std::abs(res.expected_ndc - 0.6972) <= 5e-3);
    CHECK(std::abs(res.aci - (-0.200)) <= 5e-3);
    CHECK(res.aci_clamped == res.aci);
    CHECK_FALSE(res.degenerate_expectation);
    CHECK_FALSE(res.mc_std_error.has_value());
}

TEST_CASE("closed form and enumeration agree end to end") {
    const auto closed = aci(toy_p, toy_q, {.mode = ExpectationMode::closed_form});
    const auto enumerated = aci(toy_p, toy_q, {.mode = ExpectationMode::enumeration});
    CHECK(std::abs(closed.expected_ndc - enumerated.expected_ndc) <= 1e-12);
}

TEST_CASE("self comparison scores exactly one") {
    Rng rng(41);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 3 + rng.next_below(25);
        const FuzzyPartition p = random_fuzzy(rng, n, 2 + rng.next_below(4));
        const ComparisonResult res = aci(p, p);
        CHECK(res.ndc == 1.0);
        if (!res.degenerate_expectation) CHECK(res.aci == 1.0);
    }
}

TEST_CASE("agreement on hard partitions matches the adjusted Rand index") {
    Rng rng(53);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 5 + rng.next_below(60);
        const CrispPartition p = random_crisp(rng, n, 8);
        const CrispPartition q = random_crisp(rng, n, 8);
        const ComparisonResult res = aci(from_labels(p), from_labels(q));
        const double reference = ari_cardinals(pair_counts(p, q));
        CHECK(std::abs(res.aci - reference) <= 1e-10);
    }
}

TEST_CASE("constant equivalence structures are flagged, not divided by zero") {
    // two objects in one cluster each: every pairwise equivalence is 1 on
    // both sides, so chance and observed agreement coincide
    FuzzyPartition p(Matrix::from_rows({{1.0}, {1.0}, {1.0}}));
    const ComparisonResult res = aci(p, p);
    CHECK(res.degenerate_expectation);
    CHECK(res.aci == 0.0);
    CHECK(res.ndc == 1.0);
}

TEST_CASE("monte carlo mode reports its standard error") {
    Rng rng(61);
    const FuzzyPartition p = random_fuzzy(rng, 15, 3);
    const FuzzyPartition q = random_fuzzy(rng, 15, 3);
    const ComparisonResult res =
        aci(p, q, {.mode = ExpectationMode::monte_carlo, .h = 400, .seed = 5});
    REQUIRE(res.mc_std_error.has_value());
    CHECK(*res.mc_std_error > 0.0);
    CHECK(res.expectation_mode == ExpectationMode::monte_carlo);
    const ComparisonResult again =
        aci(p, q, {.mode = ExpectationMode::monte_carlo, .h = 400, .seed = 5});
    CHECK(res.aci == again.aci);
}

TEST_CASE("clamping keeps the reported value inside [-1, 1]") {
    Rng rng(71);
    for (int rep = 0; rep < 20; ++rep) {
        const FuzzyPartition p = random_fuzzy(rng, 10, 3);
        const FuzzyPartition q = random_fuzzy(rng, 10, 3);
        const ComparisonResult res = aci(p, q);
        CHECK(res.aci_clamped >= -1.0);
        CHECK(res.aci_clamped <= 1.0);
    }
}

TEST_CASE("partitions over different object counts are rejected") {
    Rng rng(81);
    const FuzzyPartition p = random_fuzzy(rng, 5, 2);
    const FuzzyPartition q = random_fuzzy(rng, 6, 2);
    CHECK_THROWS_AS(aci(p, q), std::invalid_argument);
}

}
