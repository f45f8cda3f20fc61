#include "stwave/sparse.hpp"

#include <algorithm>
#include <string>

#include "stwave/exceptions.hpp"

namespace stwave {

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> col_idx, std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
    if (row_ptr_.size() != rows_ + 1 || row_ptr_.back() != col_idx_.size() || col_idx_.size() != values_.size()) {
        throw StructuralError("SparseMatrix: inconsistent compressed-row arrays");
    }
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
        throw StructuralError("SparseMatrix::at out of range");
    }
    const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) {
        return 0.0;
    }
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(rows_);
    multiply(x, y);
    return y;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != cols_ || y.size() != rows_) {
        throw StructuralError("SparseMatrix::multiply: expected x of length " + std::to_string(cols_) +
                              " and y of length " + std::to_string(rows_));
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            s += values_[k] * x[col_idx_[k]];
        }
        y[i] = s;
    }
}

std::size_t SparseMatrix::lower_bandwidth() const {
    std::size_t bw = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (row_ptr_[i] != row_ptr_[i + 1] && col_idx_[row_ptr_[i]] < i) {
            bw = std::max(bw, i - col_idx_[row_ptr_[i]]);
        }
    }
    return bw;
}

std::size_t SparseMatrix::upper_bandwidth() const {
    std::size_t bw = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (row_ptr_[i] != row_ptr_[i + 1] && col_idx_[row_ptr_[i + 1] - 1] > i) {
            bw = std::max(bw, col_idx_[row_ptr_[i + 1] - 1] - i);
        }
    }
    return bw;
}

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix d(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            d(i, col_idx_[k]) = values_[k];
        }
    }
    return d;
}

SparseMatrix SparseMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    if (r0 > r1 || r1 > rows_ || c0 > c1 || c1 > cols_) {
        throw StructuralError("SparseMatrix::block: range out of bounds");
    }
    std::vector<std::size_t> ptr{0};
    std::vector<std::size_t> idx;
    std::vector<double> val;
    for (std::size_t i = r0; i < r1; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            if (col_idx_[k] >= c0 && col_idx_[k] < c1) {
                idx.push_back(col_idx_[k] - c0);
                val.push_back(values_[k]);
            }
        }
        ptr.push_back(idx.size());
    }
    return SparseMatrix(r1 - r0, c1 - c0, std::move(ptr), std::move(idx), std::move(val));
}

void TripletBuilder::add(std::size_t i, std::size_t j, double value) {
    if (i >= rows_ || j >= cols_) {
        throw StructuralError("TripletBuilder::add: (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    entries_.push_back({i, j, value});
}

SparseMatrix TripletBuilder::build() const {
    std::vector<Entry> sorted = entries_;
    // Stable so duplicates are summed in insertion order and the result is reproducible.
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Entry& a, const Entry& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    std::vector<std::size_t> ptr(rows_ + 1, 0);
    std::vector<std::size_t> idx;
    std::vector<double> val;
    idx.reserve(sorted.size());
    val.reserve(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (!idx.empty() && k > 0 && sorted[k].i == sorted[k - 1].i && sorted[k].j == sorted[k - 1].j) {
            val.back() += sorted[k].value;
            continue;
        }
        idx.push_back(sorted[k].j);
        val.push_back(sorted[k].value);
        ++ptr[sorted[k].i + 1];
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        ptr[i + 1] += ptr[i];
    }
    return SparseMatrix(rows_, cols_, std::move(ptr), std::move(idx), std::move(val));
}

} // namespace stwave
