#include "stwave/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "stwave/exceptions.hpp"
#include "stwave/projection.hpp"

namespace stwave {

namespace {

QuadratureRule build_rule(const QuadratureRule& base, int pieces, bool graded, int graded_pieces) {
    if (!graded) {
        return composite(base, pieces);
    }
    QuadratureRule out;
    const double h = 1.0 / pieces;
    if (pieces > 1) {
        const auto head = composite(base, pieces - 1);
        for (std::size_t i = 0; i < head.size(); ++i) {
            out.points.push_back(head.points[i] * (1.0 - h));
            out.weights.push_back(head.weights[i] * (1.0 - h));
        }
    }
    const auto tail = graded_toward_right(base, graded_pieces);
    for (std::size_t i = 0; i < tail.size(); ++i) {
        out.points.push_back(1.0 - h + tail.points[i] * h);
        out.weights.push_back(tail.weights[i] * h);
    }
    return out;
}

void add_local(TripletBuilder& builder, const DenseMatrix& local, std::size_t element, int p) {
    for (std::size_t a = 0; a < local.rows(); ++a) {
        for (std::size_t b = 0; b < local.cols(); ++b) {
            builder.add(global_node(element, a, p), global_node(element, b, p), local(a, b));
        }
    }
}

} // namespace

QuadraturePlan::QuadraturePlan(const Mesh1D& mesh, const QuadratureSettings& settings) {
    if (settings.max_piece_length < 0.0 || settings.graded_pieces < 1) {
        throw InvalidParameter("QuadraturePlan: invalid settings");
    }
    const auto base = gauss_legendre(settings.points);
    std::map<std::pair<int, bool>, std::size_t> cache;
    rule_of_element_.reserve(mesh.num_elements());
    for (std::size_t l = 0; l < mesh.num_elements(); ++l) {
        int pieces = 1;
        if (settings.max_piece_length > 0.0) {
            const double ratio = mesh.element_size(l) / settings.max_piece_length;
            pieces = std::max(1, static_cast<int>(std::ceil(ratio * (1.0 - 1e-12))));
        }
        const bool graded = settings.graded_right_end && l + 1 == mesh.num_elements();
        const auto key = std::make_pair(pieces, graded);
        auto it = cache.find(key);
        if (it == cache.end()) {
            rules_.push_back(build_rule(base, pieces, graded, settings.graded_pieces));
            it = cache.emplace(key, rules_.size() - 1).first;
        }
        rule_of_element_.push_back(it->second);
    }
}

SpatialMatrices assemble_spatial(const Mesh1D& mesh_x, const LagrangeBasis& basis) {
    const int p = basis.degree();
    const std::size_t n_nodes = mesh_x.num_elements() * static_cast<std::size_t>(p) + 1;
    const std::size_t mx = n_nodes - 2;
    TripletBuilder mass(mx, mx);
    TripletBuilder stiff(mx, mx);
    for (std::size_t k = 0; k < mesh_x.num_elements(); ++k) {
        const double h = mesh_x.element_size(k);
        const auto m = local_mass(h, basis);
        const auto a = local_stiffness(h, basis);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const std::size_t gi = global_node(k, i, p);
            if (gi == 0 || gi + 1 == n_nodes) {
                continue;
            }
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const std::size_t gj = global_node(k, j, p);
                if (gj == 0 || gj + 1 == n_nodes) {
                    continue;
                }
                mass.add(gi - 1, gj - 1, m(i, j));
                stiff.add(gi - 1, gj - 1, a(i, j));
            }
        }
    }
    return {mass.build(), stiff.build(), mx};
}

TemporalParentMatrices assemble_temporal_parent(const Mesh1D& mesh_t, const LagrangeBasis& basis,
                                                int projection_degree) {
    const int p = basis.degree();
    const std::size_t n_nodes = mesh_t.num_elements() * static_cast<std::size_t>(p) + 1;
    TripletBuilder stiff(n_nodes, n_nodes);
    TripletBuilder mass(n_nodes, n_nodes);
    for (std::size_t l = 0; l < mesh_t.num_elements(); ++l) {
        const double h = mesh_t.element_size(l);
        add_local(stiff, local_stiffness(h, basis), l, p);
        if (projection_degree < 0) {
            add_local(mass, local_mass(h, basis), l, p);
        } else {
            add_local(mass, local_perturbed_mass(p, projection_degree, h, basis), l, p);
        }
    }
    return {stiff.build(), mass.build()};
}

TemporalMatrices assemble_temporal(const Mesh1D& mesh_t, const LagrangeBasis& basis, bool stabilised,
                                   int projection_degree) {
    const auto parent = assemble_temporal_parent(mesh_t, basis, stabilised ? projection_degree : -1);
    const std::size_t n = parent.stiffness.rows() - 1;
    TemporalMatrices out;
    out.stiffness = parent.stiffness.block(0, n, 1, n + 1);
    out.mass = parent.mass.block(0, n, 1, n + 1);
    out.stabilised = stabilised;
    out.num_dofs = n;
    return out;
}

TemporalMatrices assemble_temporal(const Mesh1D& mesh_t, const LagrangeBasis& basis, bool stabilised) {
    return assemble_temporal(mesh_t, basis, stabilised, basis.degree() - 1);
}

std::vector<double> assemble_load(const SpaceTimeFunction& f, const Mesh1D& mesh_x, const Mesh1D& mesh_t,
                                  const LagrangeBasis& basis, const QuadraturePlan& plan_x,
                                  const TemporalQuadraturePlan& plan_t) {
    if (plan_x.num_elements() != mesh_x.num_elements() || plan_t.num_elements() != mesh_t.num_elements()) {
        throw StructuralError("assemble_load: quadrature plan does not match the mesh");
    }
    const int p = basis.degree();
    const std::size_t nb = basis.size();
    const std::size_t nx_nodes = mesh_x.num_elements() * static_cast<std::size_t>(p) + 1;
    const std::size_t mx = nx_nodes - 2;
    const std::size_t nt = mesh_t.num_elements() * static_cast<std::size_t>(p);
    std::vector<double> load(mx * nt, 0.0);

    std::vector<BasisTable> tables_x;
    for (const auto& r : plan_x.rules()) {
        tables_x.push_back(tabulate(basis, r.points));
    }
    std::vector<BasisTable> tables_t;
    for (const auto& r : plan_t.rules()) {
        tables_t.push_back(tabulate(basis, r.points));
    }

    std::vector<double> local(nb * nb);
    std::vector<double> partial(nb);
    for (std::size_t l = 0; l < mesh_t.num_elements(); ++l) {
        const auto& rt = plan_t.rule(l);
        const auto& tt = tables_t[plan_t.rule_index(l)];
        const double t0 = mesh_t.element_left(l);
        const double ht = mesh_t.element_size(l);
        for (std::size_t k = 0; k < mesh_x.num_elements(); ++k) {
            const auto& rx = plan_x.rule(k);
            const auto& tx = tables_x[plan_x.rule_index(k)];
            const double x0 = mesh_x.element_left(k);
            const double hx = mesh_x.element_size(k);
            std::fill(local.begin(), local.end(), 0.0);
            for (std::size_t qt = 0; qt < rt.size(); ++qt) {
                const double t = t0 + ht * rt.points[qt];
                std::fill(partial.begin(), partial.end(), 0.0);
                for (std::size_t qx = 0; qx < rx.size(); ++qx) {
                    const double x = x0 + hx * rx.points[qx];
                    const double fv = f(x, t);
                    if (!std::isfinite(fv)) {
                        throw EvaluationError("assemble_load: non-finite right-hand side", x, t);
                    }
                    const double w = rx.weights[qx] * fv;
                    for (std::size_t a = 0; a < nb; ++a) {
                        partial[a] += w * tx.value(qx, a);
                    }
                }
                for (std::size_t at = 0; at < nb; ++at) {
                    const double w = rt.weights[qt] * tt.value(qt, at);
                    for (std::size_t ax = 0; ax < nb; ++ax) {
                        local[at * nb + ax] += w * partial[ax];
                    }
                }
            }
            for (std::size_t at = 0; at < nb; ++at) {
                const std::size_t n = global_node(l, at, p);
                if (n == nt) {
                    continue;
                }
                for (std::size_t ax = 0; ax < nb; ++ax) {
                    const std::size_t g = global_node(k, ax, p);
                    if (g == 0 || g + 1 == nx_nodes) {
                        continue;
                    }
                    load[n * mx + (g - 1)] += hx * ht * local[at * nb + ax];
                }
            }
        }
    }
    return load;
}

} // namespace stwave
