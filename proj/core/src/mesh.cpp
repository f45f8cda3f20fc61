#include "stwave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stwave/exceptions.hpp"

namespace stwave {

Mesh1D::Mesh1D(std::vector<double> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) {
        throw InvalidParameter("Mesh1D needs at least two vertices");
    }
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
        if (!std::isfinite(vertices_[k]) || !(vertices_[k] < vertices_[k + 1])) {
            throw InvalidParameter("Mesh1D vertices must be finite and strictly increasing (index " +
                                   std::to_string(k) + ")");
        }
    }
}

Mesh1D starting_spatial_mesh() { return Mesh1D({0.0, 0.25, 1.0}); }

Mesh1D starting_temporal_mesh(double T) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw InvalidParameter("terminal time T must be positive, got " + std::to_string(T));
    }
    return Mesh1D({0.0, T / 8.0, T / 4.0, T});
}

Mesh1D refine_uniform(const Mesh1D& mesh) {
    const auto v = mesh.vertices();
    std::vector<double> out;
    out.reserve(2 * v.size() - 1);
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        out.push_back(v[k]);
        out.push_back((v[k] + v[k + 1]) / 2.0);
    }
    out.push_back(v.back());
    return Mesh1D(std::move(out));
}

Mesh1D refine_uniform(const Mesh1D& mesh, int times) {
    if (times < 0) {
        throw InvalidParameter("refinement count must be non-negative");
    }
    Mesh1D out = mesh;
    for (int r = 0; r < times; ++r) {
        out = refine_uniform(out);
    }
    return out;
}

MeshStats mesh_stats(const Mesh1D& mesh) {
    MeshStats s{mesh.element_size(0), mesh.element_size(0)};
    for (std::size_t k = 1; k < mesh.num_elements(); ++k) {
        const double h = mesh.element_size(k);
        s.h_max = std::max(s.h_max, h);
        s.h_min = std::min(s.h_min, h);
    }
    return s;
}

} // namespace stwave
