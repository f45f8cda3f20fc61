#pragma once

#include <span>
#include <vector>

#include "stwave/assembly.hpp"
#include "stwave/mesh.hpp"
#include "stwave/polybasis.hpp"
#include "stwave/solutions.hpp"

namespace stwave {

struct ErrorPair {
    double l2 = 0.0;
    double h1_semi = 0.0;
};

/// Read-only view of a discrete space-time function in the trial space.
///
/// Coefficients are time-major, index c * M_x + j for temporal node c+1 and spatial node
/// j+1; nodes at t = 0 and on x in {0, L} carry implicit zeros.
class DiscreteSolution {
public:
    DiscreteSolution(std::span<const double> coeffs, const Mesh1D& mesh_x, const Mesh1D& mesh_t,
                     const LagrangeBasis& basis);

    /// Local (p+1) x (p+1) coefficients of space-time element (kx, kt), laid out [a_t][a_x].
    void local_coefficients(std::size_t kx, std::size_t kt, std::span<double> out) const;

    const Mesh1D& mesh_x() const noexcept { return mesh_x_; }
    const Mesh1D& mesh_t() const noexcept { return mesh_t_; }
    const LagrangeBasis& basis() const noexcept { return basis_; }

    /// Point evaluation (slow path, for tests).
    double value(double x, double t) const;

private:
    std::span<const double> coeffs_;
    const Mesh1D& mesh_x_;
    const Mesh1D& mesh_t_;
    const LagrangeBasis& basis_;
    std::size_t mx_;
};

/// ||u - u_h||_{L2(Q)} and |u - u_h|_{H1(Q)} by tensor-product quadrature.
/// Throws EvaluationError on a non-finite sample.
ErrorPair error_norms(const DiscreteSolution& uh, const ExactSolution& exact, const QuadraturePlan& plan_x,
                      const TemporalQuadraturePlan& plan_t);

/// ||u_h||_{L2(Q)}.
double l2_norm(const DiscreteSolution& uh, const QuadraturePlan& plan_x, const TemporalQuadraturePlan& plan_t);

/// ||g||_{L2(Q)} of a space-time function on the tensor mesh.
double l2_norm(const SpaceTimeFunction& g, const Mesh1D& mesh_x, const Mesh1D& mesh_t, const QuadraturePlan& plan_x,
               const TemporalQuadraturePlan& plan_t);

/// ||u_h - v_h||_{L2(Q)} for two discrete functions on the same meshes (bases may differ).
double l2_distance(const DiscreteSolution& a, const DiscreteSolution& b, const QuadraturePlan& plan_x,
                   const TemporalQuadraturePlan& plan_t);

/// Experimental orders log2(e_{k-1}/e_k); returns one entry fewer than `errors`.
/// Throws InvalidParameter for fewer than two entries or a non-positive error.
std::vector<double> eoc(std::span<const double> errors);

} // namespace stwave
