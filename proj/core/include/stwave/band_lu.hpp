#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stwave {

/// Square band matrix with kl sub- and ku super-diagonals in LAPACK band layout, with
/// kl extra rows reserved for pivoting fill-in.
class BandMatrix {
public:
    BandMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const noexcept { return n_; }
    std::size_t lower() const noexcept { return kl_; }
    std::size_t upper() const noexcept { return ku_; }

    bool in_band(std::size_t i, std::size_t j) const noexcept {
        return i <= j + kl_ && j <= i + ku_;
    }

    /// Throws StructuralError if (i, j) lies outside the band.
    void add(std::size_t i, std::size_t j, double value);
    double get(std::size_t i, std::size_t j) const;

    std::size_t storage_bytes() const noexcept { return data_.size() * sizeof(double); }

private:
    friend class BandLU;
    double& ref(std::size_t i, std::size_t j) { return data_[(kl_ + ku_ + i - j) + j * ld_]; }
    double cref(std::size_t i, std::size_t j) const { return data_[(kl_ + ku_ + i - j) + j * ld_]; }

    std::size_t n_;
    std::size_t kl_;
    std::size_t ku_;
    std::size_t ld_;
    std::vector<double> data_;
};

/// LU factorisation with partial pivoting of a band matrix (unblocked dgbtf2 scheme).
class BandLU {
public:
    /// Factorises in place. A pivot with |u_jj| <= pivot_tolerance * max|a_ij| is treated
    /// as singular and raises SolverFailure carrying j.
    explicit BandLU(BandMatrix matrix, double pivot_tolerance = default_pivot_tolerance);

    std::size_t size() const noexcept { return lu_.size(); }

    void solve_in_place(std::span<double> rhs) const;
    std::vector<double> solve(std::span<const double> rhs) const;

    /// Smallest |u_jj| / max|a_ij| seen during factorisation.
    double min_relative_pivot() const noexcept { return min_relative_pivot_; }

    static constexpr double default_pivot_tolerance = 1e-14;

private:
    BandMatrix lu_;
    std::vector<std::size_t> pivots_;
    double min_relative_pivot_ = 0.0;
};

} // namespace stwave
