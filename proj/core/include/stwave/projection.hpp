#pragma once

#include <functional>
#include <vector>

#include "stwave/mesh.hpp"
#include "stwave/polybasis.hpp"
#include "stwave/sparse.hpp"

namespace stwave {

/// Element-local L2 projection onto discontinuous piecewise polynomials of degree q.
///
/// On element (a,b) with h = b - a the projection is stored in the shifted Legendre
/// basis, Qv = sum_k c_k L_k((t - a)/h). The Legendre Gram matrix is diagonal,
/// int_0^1 L_j L_k = delta_jk/(2k+1), so c_k = (2k+1) int_0^1 v(a + h xi) L_k(xi) dxi
/// with no linear solve.
struct ProjectionCoeffs {
    int degree = 0;
    /// coeffs[l][k]: coefficient of L_k on element l.
    std::vector<std::vector<double>> coeffs;
};

using ScalarFunction = std::function<double(double)>;

/// Legendre coefficients c_0..c_q of the projection of f on (a,b).
/// Throws InvalidParameter if b <= a or q < 0.
std::vector<double> project_element(const ScalarFunction& f, double a, double b, int q,
                                    const QuadratureRule& quad);

/// Projection of f on every element of `mesh`.
ProjectionCoeffs project(const ScalarFunction& f, const Mesh1D& mesh, int q, const QuadratureRule& quad);

/// Value of sum_k c_k L_k(xi).
double evaluate_legendre_series(const std::vector<double>& coeffs, double xi);

/// Value of the projection at t (element located by binary search; t = vertex uses the
/// element to its right, except at the right end).
double evaluate(const ProjectionCoeffs& proj, const Mesh1D& mesh, double t);

/// G[a][b] = <b_b, Q^q b_a> over an element of size h, computed as h * C^T D C with
/// C[k][a] the k-th Legendre coefficient of the projected basis function b_a and
/// D = diag(1/(2k+1)). Uses gauss_legendre(p+1), which is exact here.
DenseMatrix local_perturbed_mass(int p, int q, double h, const LagrangeBasis& basis);

/// Exact element mass <b_b, b_a> and stiffness <b_b', b_a'> for an element of size h.
DenseMatrix local_mass(double h, const LagrangeBasis& basis);
DenseMatrix local_stiffness(double h, const LagrangeBasis& basis);

} // namespace stwave
