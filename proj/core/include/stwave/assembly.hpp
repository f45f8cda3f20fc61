#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "stwave/mesh.hpp"
#include "stwave/polybasis.hpp"
#include "stwave/sparse.hpp"

namespace stwave {

using SpaceTimeFunction = std::function<double(double x, double t)>;

/// How to integrate over the elements of a 1D mesh.
struct QuadratureSettings {
    /// Gauss-Legendre points per (sub-)interval.
    int points = 5;
    /// Elements longer than this are split into equal pieces before the rule is applied.
    /// Zero disables the split.
    double max_piece_length = 0.0;
    /// Grade the last piece of the last element geometrically toward the right endpoint.
    /// Used for right-hand sides with an integrable singularity at t = T.
    bool graded_right_end = false;
    int graded_pieces = 30;
};

/// Per-element quadrature rules on the reference element [0,1]. Elements with equal
/// subdivision share a rule, so basis tables can be cached per rule.
class QuadraturePlan {
public:
    QuadraturePlan(const Mesh1D& mesh, const QuadratureSettings& settings);

    std::size_t num_elements() const noexcept { return rule_of_element_.size(); }
    const QuadratureRule& rule(std::size_t element) const { return rules_[rule_of_element_.at(element)]; }
    std::size_t rule_index(std::size_t element) const { return rule_of_element_.at(element); }
    const std::vector<QuadratureRule>& rules() const noexcept { return rules_; }

private:
    std::vector<QuadratureRule> rules_;
    std::vector<std::size_t> rule_of_element_;
};

using TemporalQuadraturePlan = QuadraturePlan;

/// Spatial Galerkin matrices on the H^1_0-conforming degree-p space. Unknown j is the
/// global node j+1; the two boundary nodes carry no unknown.
struct SpatialMatrices {
    SparseMatrix mass;
    SparseMatrix stiffness;
    std::size_t num_dofs = 0;
};

/// Temporal Galerkin matrices with the trial/test truncation of the scheme.
///
/// Row n = 0..pN_t-1 is the test function phi_n (phi_{pN_t} at t = T is dropped).
/// Column c = 0..pN_t-1 is the trial function phi_{c+1} (phi_0 at t = 0 is dropped,
/// which enforces u_h(., 0) = 0).
struct TemporalMatrices {
    SparseMatrix stiffness;
    /// <phi_m, Q^{p-1} phi_n> when stabilised, exact mass <phi_m, phi_n> otherwise.
    SparseMatrix mass;
    bool stabilised = true;
    std::size_t num_dofs = 0;
};

/// Parent (untruncated) temporal matrices of size (pN_t+1)^2.
struct TemporalParentMatrices {
    SparseMatrix stiffness;
    SparseMatrix mass;
};

/// Global index of local node a on element k of a continuous degree-p space.
constexpr std::size_t global_node(std::size_t element, std::size_t local, int p) {
    return element * static_cast<std::size_t>(p) + local;
}

SpatialMatrices assemble_spatial(const Mesh1D& mesh_x, const LagrangeBasis& basis);

/// Builds the parent matrices. `projection_degree` selects the stabilisation: a value
/// below 0 means the exact mass matrix; the scheme itself uses p-1.
TemporalParentMatrices assemble_temporal_parent(const Mesh1D& mesh_t, const LagrangeBasis& basis,
                                                int projection_degree);

/// Truncated temporal matrices; stabilised selects Q^{p-1,disc}.
TemporalMatrices assemble_temporal(const Mesh1D& mesh_t, const LagrangeBasis& basis, bool stabilised);

/// Same, with an explicit projection degree (q = p reproduces the exact mass).
TemporalMatrices assemble_temporal(const Mesh1D& mesh_t, const LagrangeBasis& basis, bool stabilised,
                                   int projection_degree);

/// Load vector <f, psi_i phi_n> in time-major order: index n * M_x + i.
/// Throws EvaluationError if f is not finite at a quadrature point.
std::vector<double> assemble_load(const SpaceTimeFunction& f, const Mesh1D& mesh_x, const Mesh1D& mesh_t,
                                  const LagrangeBasis& basis, const QuadraturePlan& plan_x,
                                  const TemporalQuadraturePlan& plan_t);

} // namespace stwave
