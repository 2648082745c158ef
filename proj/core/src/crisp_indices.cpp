#include "concord/crisp_indices.hpp"

#include <cmath>
#include <stdexcept>

namespace concord {

namespace {

void check_same_size(const CrispPartition& p, const CrispPartition& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("partition sizes differ: " + std::to_string(p.size()) +
                                    " vs " + std::to_string(q.size()));
}

std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

}  // namespace

ContingencyTable contingency_table(const CrispPartition& p, const CrispPartition& q) {
    check_same_size(p, q);
    ContingencyTable t;
    t.rows = static_cast<std::size_t>(p.clusters());
    t.cols = static_cast<std::size_t>(q.clusters());
    t.counts.assign(t.rows * t.cols, 0);
    t.row_marginals.assign(t.rows, 0);
    t.col_marginals.assign(t.cols, 0);
    t.n = static_cast<std::int64_t>(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto r = static_cast<std::size_t>(p.labels()[i]);
        const auto c = static_cast<std::size_t>(q.labels()[i]);
        ++t.counts[r * t.cols + c];
        ++t.row_marginals[r];
        ++t.col_marginals[c];
    }
    return t;
}

PairCounts pair_counts(const CrispPartition& p, const CrispPartition& q) {
    const ContingencyTable t = contingency_table(p, q);
    std::int64_t a = 0;
    for (std::int64_t nij : t.counts) a += choose2(nij);
    std::int64_t paired_p = 0;
    for (std::int64_t ni : t.row_marginals) paired_p += choose2(ni);
    std::int64_t paired_q = 0;
    for (std::int64_t nj : t.col_marginals) paired_q += choose2(nj);

    PairCounts pc;
    pc.a = a;
    pc.b = paired_p - a;
    pc.c = paired_q - a;
    pc.d = choose2(t.n) - pc.a - pc.b - pc.c;
    return pc;
}

PairCounts pair_counts_scan(const CrispPartition& p, const CrispPartition& q) {
    check_same_size(p, q);
    PairCounts pc;
    const auto& lp = p.labels();
    const auto& lq = q.labels();
    for (std::size_t i = 0; i < lp.size(); ++i) {
        for (std::size_t j = i + 1; j < lp.size(); ++j) {
            const bool same_p = lp[i] == lp[j];
            const bool same_q = lq[i] == lq[j];
            if (same_p && same_q)
                ++pc.a;
            else if (same_p)
                ++pc.b;
            else if (same_q)
                ++pc.c;
            else
                ++pc.d;
        }
    }
    return pc;
}

double rand_index(const PairCounts& pc) {
    const std::int64_t m = pc.m();
    if (m <= 0) throw NumericalError("rand_index: no object pairs");
    return static_cast<double>(pc.a + pc.d) / static_cast<double>(m);
}

double ari_cardinals(const PairCounts& pc) {
    const double a = static_cast<double>(pc.a);
    const double b = static_cast<double>(pc.b);
    const double c = static_cast<double>(pc.c);
    const double d = static_cast<double>(pc.d);
    const double denom = b * b + c * c + 2.0 * a * d + (a + d) * (b + c);
    if (denom == 0.0) {
        // only reachable with b = c = 0, i.e. identical pair structure
        if (pc.b == 0 && pc.c == 0) return 1.0;
        throw NumericalError("ari_cardinals: undefined for degenerate partitions");
    }
    return 2.0 * (a * d - b * c) / denom;
}

double ari_contingency(const ContingencyTable& t) {
    if (t.n < 2) throw std::invalid_argument("ari_contingency: need n >= 2");
    double sum_cells = 0.0;
    for (std::int64_t nij : t.counts) sum_cells += static_cast<double>(choose2(nij));
    double sum_rows = 0.0;
    for (std::int64_t ni : t.row_marginals) sum_rows += static_cast<double>(choose2(ni));
    double sum_cols = 0.0;
    for (std::int64_t nj : t.col_marginals) sum_cols += static_cast<double>(choose2(nj));

    const double all_pairs = static_cast<double>(choose2(t.n));
    const double expected = sum_rows * sum_cols / all_pairs;
    const double maximum = 0.5 * (sum_rows + sum_cols);
    const double denom = maximum - expected;
    if (denom == 0.0) {
        if (sum_cells == maximum) return 1.0;  // identical pair structure
        throw NumericalError("ari_contingency: undefined for degenerate partitions");
    }
    return (sum_cells - expected) / denom;
}

std::map<std::string, double> related_indices(const PairCounts& pc) {
    const double a = static_cast<double>(pc.a);
    const double b = static_cast<double>(pc.b);
    const double c = static_cast<double>(pc.c);

    std::map<std::string, double> out;
    if (a + b + c > 0.0) out["jaccard"] = a / (a + b + c);
    if ((a + b) > 0.0 && (a + c) > 0.0) out["fowlkes_mallows"] = a / std::sqrt((a + b) * (a + c));
    out["mirkin"] = 2.0 * (b + c);
    if (2.0 * a + b + c > 0.0) out["dice"] = 2.0 * a / (2.0 * a + b + c);
    return out;
}

}  // namespace concord
