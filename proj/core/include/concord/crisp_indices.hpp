#ifndef CONCORD_CRISP_INDICES_HPP
#define CONCORD_CRISP_INDICES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "concord/partition.hpp"

namespace concord {

/// Degenerate denominator, undefined index value, and similar conditions
/// where no result is defined.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pair classification counts over all m = n(n-1)/2 object pairs:
///   a  co-clustered in both partitions
///   b  co-clustered in the first only
///   c  co-clustered in the second only
///   d  co-clustered in neither
struct PairCounts {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;

    std::int64_t m() const { return a + b + c + d; }
};

/// Cross-tabulation of two hard partitions with marginals.
struct ContingencyTable {
    std::size_t rows = 0;                      // clusters in P
    std::size_t cols = 0;                      // clusters in Q
    std::vector<std::int64_t> counts;          // rows x cols, row-major
    std::vector<std::int64_t> row_marginals;
    std::vector<std::int64_t> col_marginals;
    std::int64_t n = 0;

    std::int64_t operator()(std::size_t i, std::size_t j) const { return counts[i * cols + j]; }
};

ContingencyTable contingency_table(const CrispPartition& p, const CrispPartition& q);

/// Pair counts from the contingency table, O(n + Kp*Kq).
PairCounts pair_counts(const CrispPartition& p, const CrispPartition& q);

/// Pair counts by direct O(n^2) scan. Agrees with pair_counts exactly.
PairCounts pair_counts_scan(const CrispPartition& p, const CrispPartition& q);

/// (a + d) / m, in [0, 1].
double rand_index(const PairCounts& pc);

/// Hubert-Arabie adjusted Rand index from the four pair cardinals:
/// 2(ad - bc) / (b^2 + c^2 + 2ad + (a+d)(b+c)). Degenerate denominator
/// (both partitions all-singletons or both one-cluster) yields 1 when the
/// pair structures are identical, which is the only way it can occur.
double ari_cardinals(const PairCounts& pc);

/// Adjusted Rand index in the contingency-table (binomial coefficient)
/// formulation. Equals ari_cardinals on the same pair of partitions.
double ari_contingency(const ContingencyTable& table);

/// Jaccard, Fowlkes-Mallows, Mirkin and Dice from the pair cardinals.
/// Indices whose denominator vanishes are omitted from the map.
std::map<std::string, double> related_indices(const PairCounts& pc);

}  // namespace concord

#endif
