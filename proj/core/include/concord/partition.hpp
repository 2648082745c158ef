#ifndef CONCORD_PARTITION_HPP
#define CONCORD_PARTITION_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "concord/matrix.hpp"

namespace concord {

/// Hard partition: one cluster id per object, ids in [0, k).
class CrispPartition {
public:
    /// Infers k = max(label) + 1.
    explicit CrispPartition(std::vector<int> labels);

    /// Explicit k; permits empty cluster ids.
    CrispPartition(std::vector<int> labels, int k);

    std::size_t size() const { return labels_.size(); }
    int clusters() const { return k_; }
    const std::vector<int>& labels() const { return labels_; }

    friend bool operator==(const CrispPartition&, const CrispPartition&) = default;

private:
    void validate() const;

    std::vector<int> labels_;
    int k_ = 0;
};

/// Soft partition: row-stochastic membership matrix, n objects x K clusters.
/// Rows must sum to 1 within 1e-9 (Ruspini condition); pass renormalize to
/// rescale rows instead of rejecting them.
class FuzzyPartition {
public:
    explicit FuzzyPartition(Matrix memberships, bool renormalize = false);

    std::size_t size() const { return memberships_.rows(); }
    std::size_t clusters() const { return memberships_.cols(); }
    const Matrix& memberships() const { return memberships_; }

    /// True when every row is exactly one-hot.
    bool is_one_hot() const;

    /// Hard partition from one-hot rows; throws if any row is not one-hot.
    CrispPartition to_crisp() const;

    static constexpr double row_sum_tolerance = 1e-9;

    friend bool operator==(const FuzzyPartition&, const FuzzyPartition&) = default;

private:
    Matrix memberships_;
};

/// One-hot encoding of a label vector, K = max(label) + 1.
FuzzyPartition from_labels(const std::vector<int>& labels);
FuzzyPartition from_labels(const CrispPartition& partition);

/// Pairwise fuzzy equivalence degrees E(i,j) = 1 - 0.5 * sum_k |w_ik - w_jk|.
/// The divisor 2 makes the L1 distance between membership rows (each summing
/// to 1, so the raw distance ranges over [0,2]) land in [0,1]. Symmetric,
/// unit diagonal; exactly 0/1 for one-hot input.
class EquivalenceMatrix {
public:
    std::size_t size() const { return dense_.rows(); }          // n
    std::size_t pair_count() const { return upper_tri_.size(); }  // m = n(n-1)/2

    const Matrix& dense() const { return dense_; }
    double operator()(std::size_t i, std::size_t j) const { return dense_(i, j); }

    /// Strictly-upper entries in row-major pair order (0,1),(0,2),...,(n-2,n-1).
    const std::vector<double>& upper_tri() const { return upper_tri_; }

    friend EquivalenceMatrix equivalence_matrix(const FuzzyPartition&);
    friend bool operator==(const EquivalenceMatrix&, const EquivalenceMatrix&) = default;

private:
    EquivalenceMatrix() = default;

    Matrix dense_;
    std::vector<double> upper_tri_;
};

EquivalenceMatrix equivalence_matrix(const FuzzyPartition& partition);

/// Row-major flat index of pair (i, j), 0 <= i < j < n.
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);

/// Inverse of pair_index.
std::pair<std::size_t, std::size_t> pair_from_index(std::size_t index, std::size_t n);

}  // namespace concord

#endif
