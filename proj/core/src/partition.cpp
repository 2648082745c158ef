#include "concord/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace concord {

CrispPartition::CrispPartition(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("CrispPartition: empty label vector");
    k_ = *std::max_element(labels_.begin(), labels_.end()) + 1;
    validate();
}

CrispPartition::CrispPartition(std::vector<int> labels, int k)
    : labels_(std::move(labels)), k_(k) {
    validate();
}

void CrispPartition::validate() const {
    if (labels_.size() < 2)
        throw std::invalid_argument("CrispPartition: need at least 2 objects");
    if (k_ < 1) throw std::invalid_argument("CrispPartition: k must be positive");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] < 0 || labels_[i] >= k_)
            throw std::invalid_argument("CrispPartition: label out of range at object " +
                                        std::to_string(i));
    }
}

FuzzyPartition::FuzzyPartition(Matrix memberships, bool renormalize)
    : memberships_(std::move(memberships)) {
    const std::size_t n = memberships_.rows();
    const std::size_t k = memberships_.cols();
    if (n < 2) throw std::invalid_argument("FuzzyPartition: need at least 2 objects");
    if (k < 1) throw std::invalid_argument("FuzzyPartition: need at least 1 cluster");
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double w = memberships_(i, j);
            // Raw nonnegative weights are fine when renormalizing; rescaling puts
            // them back into [0,1]. Otherwise the row must already be a membership.
            if (!std::isfinite(w) || w < 0.0 || (!renormalize && w > 1.0))
                throw std::invalid_argument("FuzzyPartition: membership outside [0,1] at row " +
                                            std::to_string(i) + ", column " + std::to_string(j));
            sum += w;
        }
        if (renormalize) {
            if (sum <= 0.0)
                throw std::invalid_argument("FuzzyPartition: cannot renormalize zero row " +
                                            std::to_string(i));
            for (std::size_t j = 0; j < k; ++j) memberships_(i, j) /= sum;
        } else if (std::abs(sum - 1.0) > row_sum_tolerance) {
            throw std::invalid_argument("FuzzyPartition: row " + std::to_string(i) +
                                        " sums to " + std::to_string(sum) + ", expected 1");
        }
    }
}

bool FuzzyPartition::is_one_hot() const {
    for (std::size_t i = 0; i < size(); ++i) {
        int ones = 0;
        for (std::size_t j = 0; j < clusters(); ++j) {
            const double w = memberships_(i, j);
            if (w == 1.0)
                ++ones;
            else if (w != 0.0)
                return false;
        }
        if (ones != 1) return false;
    }
    return true;
}

CrispPartition FuzzyPartition::to_crisp() const {
    if (!is_one_hot())
        throw std::invalid_argument("FuzzyPartition::to_crisp: memberships are not one-hot");
    std::vector<int> labels(size());
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < clusters(); ++j)
            if (memberships_(i, j) == 1.0) labels[i] = static_cast<int>(j);
    return CrispPartition(std::move(labels), static_cast<int>(clusters()));
}

FuzzyPartition from_labels(const std::vector<int>& labels) {
    if (labels.empty()) throw std::invalid_argument("from_labels: empty label vector");
    int max_label = -1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0)
            throw std::invalid_argument("from_labels: negative label at object " +
                                        std::to_string(i));
        max_label = std::max(max_label, labels[i]);
    }
    Matrix w(labels.size(), static_cast<std::size_t>(max_label) + 1, 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i)
        w(i, static_cast<std::size_t>(labels[i])) = 1.0;
    return FuzzyPartition(std::move(w));
}

FuzzyPartition from_labels(const CrispPartition& partition) {
    Matrix w(partition.size(), static_cast<std::size_t>(partition.clusters()), 0.0);
    for (std::size_t i = 0; i < partition.size(); ++i)
        w(i, static_cast<std::size_t>(partition.labels()[i])) = 1.0;
    return FuzzyPartition(std::move(w));
}

EquivalenceMatrix equivalence_matrix(const FuzzyPartition& partition) {
    const std::size_t n = partition.size();
    const std::size_t k = partition.clusters();
    const Matrix& w = partition.memberships();

    EquivalenceMatrix e;
    e.dense_ = Matrix(n, n, 1.0);
    e.upper_tri_.resize(n * (n - 1) / 2);

    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            double l1 = 0.0;
            for (std::size_t c = 0; c < k; ++c) l1 += std::abs(w(i, c) - w(j, c));
            const double eq = 1.0 - 0.5 * l1;
            e.dense_(i, j) = eq;
            e.dense_(j, i) = eq;
            e.upper_tri_[idx] = eq;
        }
    }
    return e;
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
    if (i >= j || j >= n)
        throw std::invalid_argument("pair_index: need 0 <= i < j < n");
    // row-major over strictly-upper entries: row i starts after
    // i*n - i(i+1)/2 earlier pairs
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> pair_from_index(std::size_t index, std::size_t n) {
    const std::size_t m = n * (n - 1) / 2;
    if (index >= m) throw std::invalid_argument("pair_from_index: index out of range");
    std::size_t i = 0;
    std::size_t row_start = 0;
    while (row_start + (n - i - 1) <= index) {
        row_start += n - i - 1;
        ++i;
    }
    return {i, index - row_start + i + 1};
}

}  // namespace concord
