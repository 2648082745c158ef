#include <benchmark/benchmark.h>

#include <vector>

#include <concord/clustering.hpp>
#include <concord/crisp_indices.hpp>
#include <concord/expectation.hpp>
#include <concord/fuzzy_concordance.hpp>
#include <concord/rng.hpp>
#include <concord/simulation.hpp>

using namespace concord;

namespace {

FuzzyPartition random_fuzzy(std::uint64_t seed, std::size_t n, std::size_t k) {
    Rng rng(seed);
    Matrix w(n, k);
    for (std::size_t i = 0; i < n; ++i) rng.dirichlet_row(w.row(i));
    return FuzzyPartition(std::move(w));
}

Dataset mixture_data(std::size_t n, std::uint64_t seed) {
    auto [data, truth] = gen_mixture(GaussianMixtureSpec::isotropic(
        {{-2.0, -2.0}, {2.0, 2.0}, {0.0, 0.0}}, 0.25, n, seed));
    return data;
}

}  // namespace

static void BM_EquivalenceMatrix(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const FuzzyPartition p = random_fuzzy(1, n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(equivalence_matrix(p));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EquivalenceMatrix)->Arg(100)->Arg(300)->Arg(500)->Complexity();

static void BM_NdcOnly(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto e_p = equivalence_matrix(random_fuzzy(2, n, 4));
    const auto e_q = equivalence_matrix(random_fuzzy(3, n, 4));
    for (auto _ : state) benchmark::DoNotOptimize(ndc(e_p, e_q));
}
BENCHMARK(BM_NdcOnly)->Arg(100)->Arg(500);

static void BM_ExpectationClosedForm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto e_p = equivalence_matrix(random_fuzzy(4, n, 4));
    const auto e_q = equivalence_matrix(random_fuzzy(5, n, 4));
    for (auto _ : state)
        benchmark::DoNotOptimize(expected_ndc_closed_form(e_p.upper_tri(), e_q.upper_tri()));
}
BENCHMARK(BM_ExpectationClosedForm)->Arg(100)->Arg(300)->Arg(500);

static void BM_ExpectationMonteCarlo(benchmark::State& state) {
    const auto e_p = equivalence_matrix(random_fuzzy(6, 200, 4));
    const auto e_q = equivalence_matrix(random_fuzzy(7, 200, 4));
    const auto h = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            expected_ndc_monte_carlo(e_p.upper_tri(), e_q.upper_tri(), h, 9));
}
BENCHMARK(BM_ExpectationMonteCarlo)->Arg(10)->Arg(100)->Arg(1000);

static void BM_FullComparisonClosedForm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const FuzzyPartition p = random_fuzzy(8, n, 4);
    const FuzzyPartition q = random_fuzzy(9, n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(aci(p, q));
}
BENCHMARK(BM_FullComparisonClosedForm)->Arg(100)->Arg(500);

static void BM_PairCounts(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(10);
    std::vector<int> a(n), b(n);
    for (auto& l : a) l = static_cast<int>(rng.next_below(8));
    for (auto& l : b) l = static_cast<int>(rng.next_below(8));
    const CrispPartition p(a, 8), q(b, 8);
    for (auto _ : state) benchmark::DoNotOptimize(pair_counts(p, q));
}
BENCHMARK(BM_PairCounts)->Arg(1000)->Arg(100000);

static void BM_Fcm(benchmark::State& state) {
    const Dataset data = mixture_data(static_cast<std::size_t>(state.range(0)), 11);
    ClusteringConfig cfg;
    cfg.k = 3;
    cfg.n_init = 1;
    for (auto _ : state) benchmark::DoNotOptimize(fcm(data, cfg));
}
BENCHMARK(BM_Fcm)->Arg(100)->Arg(500);

static void BM_PdCluster(benchmark::State& state) {
    const Dataset data = mixture_data(static_cast<std::size_t>(state.range(0)), 12);
    ClusteringConfig cfg;
    cfg.k = 3;
    cfg.n_init = 1;
    for (auto _ : state) benchmark::DoNotOptimize(pd_cluster(data, cfg));
}
BENCHMARK(BM_PdCluster)->Arg(100)->Arg(500);

static void BM_Kmeans(benchmark::State& state) {
    const Dataset data = mixture_data(static_cast<std::size_t>(state.range(0)), 13);
    ClusteringConfig cfg;
    cfg.k = 3;
    cfg.n_init = 1;
    for (auto _ : state) benchmark::DoNotOptimize(kmeans(data, cfg));
}
BENCHMARK(BM_Kmeans)->Arg(100)->Arg(500);

BENCHMARK_MAIN();
