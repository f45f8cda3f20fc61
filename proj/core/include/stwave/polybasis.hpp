#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stwave {

/// Quadrature rule on the reference element [0,1].
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    std::size_t size() const noexcept { return points.size(); }
};

/// n-point Gauss-Legendre rule mapped to [0,1], exact for polynomials of degree 2n-1.
/// Valid for 1 <= n <= 64; throws InvalidParameter otherwise.
QuadratureRule gauss_legendre(int n);

/// Composite rule: [0,1] split into `pieces` equal sub-intervals, each carrying `base`.
QuadratureRule composite(const QuadratureRule& base, int pieces);

/// Composite rule graded geometrically toward xi = 1: sub-interval j has length 2^-(j+1)
/// for j < pieces-1 and the last sub-interval takes the remainder.
QuadratureRule graded_toward_right(const QuadratureRule& base, int pieces);

/// Degree-k Legendre polynomial shifted to [0,1], normalised to L_k(1) = 1.
/// Satisfies int_0^1 L_j L_k = delta_jk / (2k+1).
double shifted_legendre(int k, double xi);

enum class NodePlacement { gauss_lobatto, equispaced };

/// Degree-p nodal Lagrange basis on [0,1]. Nodes always include both endpoints.
class LagrangeBasis {
public:
    /// Throws InvalidParameter for p < 1 or p > 16.
    explicit LagrangeBasis(int degree, NodePlacement placement = NodePlacement::gauss_lobatto);

    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    NodePlacement placement() const noexcept { return placement_; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    double eval(std::size_t k, double xi) const;
    double deriv(std::size_t k, double xi) const;

private:
    int degree_;
    NodePlacement placement_;
    std::vector<double> nodes_;
    std::vector<double> denominators_;
};

/// Free-function spellings of LagrangeBasis::eval / deriv.
inline double lagrange_eval(const LagrangeBasis& basis, std::size_t k, double xi) { return basis.eval(k, xi); }
inline double lagrange_deriv(const LagrangeBasis& basis, std::size_t k, double xi) { return basis.deriv(k, xi); }

/// Values and xi-derivatives of every basis function at every point of a rule,
/// laid out [point][function].
struct BasisTable {
    std::size_t num_points = 0;
    std::size_t num_functions = 0;
    std::vector<double> values;
    std::vector<double> derivs;

    double value(std::size_t q, std::size_t k) const { return values[q * num_functions + k]; }
    double deriv(std::size_t q, std::size_t k) const { return derivs[q * num_functions + k]; }
};

BasisTable tabulate(const LagrangeBasis& basis, std::span<const double> points);

} // namespace stwave
