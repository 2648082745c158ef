#include <doctest.h>

#include <cmath>
#include <vector>

#include <concord/crisp_indices.hpp>
#include <concord/rng.hpp>

using namespace concord;

namespace {

CrispPartition random_crisp(Rng& rng, std::size_t n, int k_max) {
    const int k = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k_max - 1)));
    std::vector<int> labels(n);
    for (auto& l : labels) l = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
    return CrispPartition(std::move(labels), k);
}

}  // namespace

TEST_SUITE("crisp_indices") {

TEST_CASE("four object toy pair counts and indices") {
    CrispPartition p({0, 0, 1, 0});
    CrispPartition q({0, 1, 1, 0});
    const PairCounts pc = pair_counts(p, q);
    CHECK(pc.a == 1);
    CHECK(pc.b == 2);
    CHECK(pc.c == 1);
    CHECK(pc.d == 2);
    CHECK(pc.m() == 6);
    CHECK(rand_index(pc) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ari_cardinals(pc) == doctest::Approx(0.0).epsilon(1e-15));

    const auto related = related_indices(pc);
    CHECK(related.at("jaccard") == doctest::Approx(0.25));
    CHECK(related.at("dice") == doctest::Approx(0.4));
    CHECK(related.at("fowlkes_mallows") == doctest::Approx(1.0 / std::sqrt(6.0)));
    CHECK(related.at("mirkin") == doctest::Approx(6.0));
}

TEST_CASE("contingency table marginals add up") {
    CrispPartition p({0, 0, 1, 2, 1, 0});
    CrispPartition q({1, 1, 0, 0, 1, 1});
    const ContingencyTable t = contingency_table(p, q);
    CHECK(t.rows == 3);
    CHECK(t.cols == 2);
    CHECK(t.n == 6);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < t.rows; ++i) {
        std::int64_t row = 0;
        for (std::size_t j = 0; j < t.cols; ++j) row += t(i, j);
        CHECK(row == t.row_marginals[i]);
        total += row;
    }
    CHECK(total == t.n);
}

TEST_CASE("table-based pair counts match the quadratic scan") {
    Rng rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + rng.next_below(60);
        const CrispPartition p = random_crisp(rng, n, 8);
        const CrispPartition q = random_crisp(rng, n, 8);
        const PairCounts fast = pair_counts(p, q);
        const PairCounts slow = pair_counts_scan(p, q);
        CHECK(fast.a == slow.a);
        CHECK(fast.b == slow.b);
        CHECK(fast.c == slow.c);
        CHECK(fast.d == slow.d);
        CHECK(fast.m() == static_cast<std::int64_t>(n * (n - 1) / 2));
    }
}

TEST_CASE("both adjusted Rand formulations agree") {
    Rng rng(77);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 5 + rng.next_below(80);
        const CrispPartition p = random_crisp(rng, n, 10);
        const CrispPartition q = random_crisp(rng, n, 10);
        const double from_cardinals = ari_cardinals(pair_counts(p, q));
        const double from_table = ari_contingency(contingency_table(p, q));
        CHECK(std::abs(from_cardinals - from_table) <= 1e-12);
    }
}

TEST_CASE("identical partitions score one") {
    CrispPartition p({0, 1, 1, 2, 0, 2, 1});
    const PairCounts pc = pair_counts(p, p);
    CHECK(pc.b == 0);
    CHECK(pc.c == 0);
    CHECK(rand_index(pc) == 1.0);
    CHECK(ari_cardinals(pc) == 1.0);
    CHECK(ari_contingency(contingency_table(p, p)) == 1.0);
}

TEST_CASE("degenerate agreements keep the adjusted index defined") {
    // both one cluster and both all singletons: identical structures, ARI 1
    CrispPartition ones({0, 0, 0, 0}, 1);
    CHECK(ari_cardinals(pair_counts(ones, ones)) == 1.0);
    CrispPartition singletons({0, 1, 2, 3});
    CHECK(ari_cardinals(pair_counts(singletons, singletons)) == 1.0);
    // one cluster against singletons: agreement indistinguishable from chance
    CHECK(ari_cardinals(pair_counts(ones, singletons)) == 0.0);
}

TEST_CASE("mirkin distance relates to the Rand index") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 4 + rng.next_below(40);
        const CrispPartition p = random_crisp(rng, n, 6);
        const CrispPartition q = random_crisp(rng, n, 6);
        const PairCounts pc = pair_counts(p, q);
        const double mirkin = related_indices(pc).at("mirkin");
        CHECK(mirkin == doctest::Approx(2.0 * static_cast<double>(pc.b + pc.c)));
        CHECK(mirkin ==
              doctest::Approx(static_cast<double>(n) * static_cast<double>(n - 1) *
                              (1.0 - rand_index(pc))));
    }
}

TEST_CASE("pair counts require equal length partitions") {
    CrispPartition p({0, 1, 0});
    CrispPartition q({0, 1});
    CHECK_THROWS_AS(pair_counts(p, q), std::invalid_argument);
    CHECK_THROWS_AS(contingency_table(p, q), std::invalid_argument);
}

}
