#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stwave {

/// Small row-major dense matrix used for element matrices and test oracles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }

    DenseMatrix transpose() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Real sparse matrix in compressed-row storage. Column indices are sorted within a row
/// and unique.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                 std::vector<std::size_t> col_idx, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nonzeros() const noexcept { return values_.size(); }

    std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
    std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Entry lookup by binary search; returns 0 for entries outside the pattern.
    double at(std::size_t i, std::size_t j) const;

    /// y = A x. Throws StructuralError on length mismatch.
    std::vector<double> multiply(std::span<const double> x) const;
    void multiply(std::span<const double> x, std::span<double> y) const;

    /// Largest |i - j| below (lower) and above (upper) the diagonal over the stored pattern.
    std::size_t lower_bandwidth() const;
    std::size_t upper_bandwidth() const;

    DenseMatrix to_dense() const;

    /// Copy of the rows [r0, r1) and columns [c0, c1).
    SparseMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

/// Accumulates (i, j, value) contributions; duplicates are summed on build().
class TripletBuilder {
public:
    TripletBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    void add(std::size_t i, std::size_t j, double value);
    void reserve(std::size_t n) { entries_.reserve(n); }

    /// Explicit zeros produced by summation are kept so the pattern is value-independent.
    SparseMatrix build() const;

private:
    struct Entry {
        std::size_t i;
        std::size_t j;
        double value;
    };
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Entry> entries_;
};

} // namespace stwave
