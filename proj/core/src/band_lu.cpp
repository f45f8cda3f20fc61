#include "stwave/band_lu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stwave/exceptions.hpp"

namespace stwave {

BandMatrix::BandMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), data_(ld_ * n, 0.0) {}

void BandMatrix::add(std::size_t i, std::size_t j, double value) {
    if (i >= n_ || j >= n_ || !in_band(i, j)) {
        throw StructuralError("BandMatrix::add: (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") outside the band");
    }
    ref(i, j) += value;
}

double BandMatrix::get(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) {
        throw StructuralError("BandMatrix::get: index out of range");
    }
    return in_band(i, j) ? cref(i, j) : 0.0;
}

BandLU::BandLU(BandMatrix matrix, double pivot_tolerance) : lu_(std::move(matrix)), pivots_(lu_.n_) {
    const std::size_t n = lu_.n_;
    const std::size_t kl = lu_.kl_;
    const std::size_t ku = lu_.ku_;

    double scale = 0.0;
    for (double v : lu_.data_) {
        scale = std::max(scale, std::abs(v));
    }
    if (n > 0 && scale == 0.0) {
        throw SolverFailure("BandLU: zero matrix", 0);
    }
    min_relative_pivot_ = n > 0 ? std::numeric_limits<double>::infinity() : 0.0;

    // Column of the right-most nonzero in the U part seen so far.
    std::size_t ju = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t km = std::min(kl, n - 1 - j);
        std::size_t jp = j;
        double best = std::abs(lu_.ref(j, j));
        for (std::size_t i = j + 1; i <= j + km; ++i) {
            if (std::abs(lu_.ref(i, j)) > best) {
                best = std::abs(lu_.ref(i, j));
                jp = i;
            }
        }
        pivots_[j] = jp;
        min_relative_pivot_ = std::min(min_relative_pivot_, best / scale);
        if (!(best > pivot_tolerance * scale)) {
            throw SolverFailure("BandLU: singular or numerically rank-deficient matrix", j);
        }
        ju = std::max(ju, std::min(j + ku + (jp - j), n - 1));
        if (jp != j) {
            for (std::size_t c = j; c <= ju; ++c) {
                std::swap(lu_.ref(j, c), lu_.ref(jp, c));
            }
        }
        const double inv = 1.0 / lu_.ref(j, j);
        for (std::size_t i = j + 1; i <= j + km; ++i) {
            lu_.ref(i, j) *= inv;
        }
        for (std::size_t c = j + 1; c <= ju; ++c) {
            const double u = lu_.ref(j, c);
            if (u == 0.0) {
                continue;
            }
            for (std::size_t i = j + 1; i <= j + km; ++i) {
                lu_.ref(i, c) -= lu_.ref(i, j) * u;
            }
        }
    }
}

void BandLU::solve_in_place(std::span<double> b) const {
    const std::size_t n = lu_.n_;
    if (b.size() != n) {
        throw StructuralError("BandLU::solve: right-hand side has length " + std::to_string(b.size()) +
                              ", expected " + std::to_string(n));
    }
    const std::size_t kl = lu_.kl_;
    const std::size_t kd = lu_.kl_ + lu_.ku_;
    for (std::size_t j = 0; j < n; ++j) {
        if (pivots_[j] != j) {
            std::swap(b[j], b[pivots_[j]]);
        }
        const std::size_t km = std::min(kl, n - 1 - j);
        const double bj = b[j];
        for (std::size_t i = j + 1; i <= j + km; ++i) {
            b[i] -= lu_.cref(i, j) * bj;
        }
    }
    for (std::size_t jj = n; jj-- > 0;) {
        b[jj] /= lu_.cref(jj, jj);
        const double bj = b[jj];
        const std::size_t i0 = jj > kd ? jj - kd : 0;
        for (std::size_t i = i0; i < jj; ++i) {
            b[i] -= lu_.cref(i, jj) * bj;
        }
    }
}

std::vector<double> BandLU::solve(std::span<const double> rhs) const {
    std::vector<double> x(rhs.begin(), rhs.end());
    solve_in_place(x);
    return x;
}

} // namespace stwave
