#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stwave/assembly.hpp"
#include "stwave/sparse.hpp"

namespace stwave {

/// K_h = -A_t (x) M_x + Mtilde_t (x) A_x, held as its four factors.
///
/// Unknowns are time-major: index c * M_x + j is trial function phi_{c+1} times psi_j.
struct KroneckerSystem {
    TemporalMatrices temporal;
    SpatialMatrices spatial;

    std::size_t dimension() const noexcept { return temporal.num_dofs * spatial.num_dofs; }
};

/// Builds the flattened matrix. Throws StructuralError on non-conforming factors.
SparseMatrix flatten(const KroneckerSystem& system);

/// K_h v without flattening, using (A (x) B) vec(V) = vec(B V A^T).
std::vector<double> apply(const KroneckerSystem& system, std::span<const double> v);

enum class SolverKind {
    /// Block forward substitution over time elements; one band LU per element block.
    time_marching,
    /// Band LU of the whole flattened matrix.
    banded,
};

struct SolveOptions {
    SolverKind kind = SolverKind::time_marching;
    double residual_tolerance = 1e-10;
    double pivot_tolerance = 1e-14;
};

struct SolveResult {
    std::vector<double> solution;
    /// ||K u - f||_2 / ||f||_2 (absolute residual norm when f = 0).
    double relative_residual = 0.0;
    bool residual_ok = true;
    std::string warning;
};

/// Direct solve of K_h u = rhs. Throws SolverFailure (with pivot location) on a singular
/// or numerically rank-deficient matrix; an unmet residual tolerance is reported through
/// residual_ok / warning.
SolveResult solve(const KroneckerSystem& system, std::span<const double> rhs, const SolveOptions& options = {});

/// Estimated peak bytes for solve() with the given solver and factor sizes.
std::size_t estimate_solver_bytes(std::size_t spatial_dofs, std::size_t temporal_dofs, int p, SolverKind kind);

} // namespace stwave
