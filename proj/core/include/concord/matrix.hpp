#ifndef CONCORD_MATRIX_HPP
#define CONCORD_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace concord {

/// Dense row-major matrix of doubles. Small value type used for membership
/// matrices, equivalence matrices, data sets and cluster centers.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty()) throw std::invalid_argument("Matrix: no rows");
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        std::vector<std::vector<double>> v;
        v.reserve(rows.size());
        for (const auto& r : rows) v.emplace_back(r);
        return from_rows(v);
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_.data() + i * cols_, cols_);
    }
    std::span<double> row(std::size_t i) {
        return std::span<double>(data_.data() + i * cols_, cols_);
    }

    const std::vector<double>& data() const { return data_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace concord

#endif
