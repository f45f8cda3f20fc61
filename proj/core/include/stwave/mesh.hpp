#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stwave {

/// Decomposition of an interval into N elements by strictly increasing vertices.
///
/// Element k is (vertices[k], vertices[k+1]). Only vertices are stored; sizes and
/// element bounds are derived on demand.
class Mesh1D {
public:
    /// Throws InvalidParameter unless there are at least two strictly increasing vertices.
    explicit Mesh1D(std::vector<double> vertices);

    std::size_t num_elements() const noexcept { return vertices_.size() - 1; }
    std::span<const double> vertices() const noexcept { return vertices_; }

    double left() const noexcept { return vertices_.front(); }
    double right() const noexcept { return vertices_.back(); }
    double length() const noexcept { return right() - left(); }

    double element_left(std::size_t k) const { return vertices_.at(k); }
    double element_right(std::size_t k) const { return vertices_.at(k + 1); }
    double element_size(std::size_t k) const { return vertices_.at(k + 1) - vertices_.at(k); }

    friend bool operator==(const Mesh1D&, const Mesh1D&) = default;

private:
    std::vector<double> vertices_;
};

struct MeshStats {
    double h_max;
    double h_min;
};

/// Spatial start mesh of the numerical study on (0,1): vertices 0, 1/4, 1.
Mesh1D starting_spatial_mesh();

/// Temporal start mesh on (0,T): vertices 0, T/8, T/4, T.
Mesh1D starting_temporal_mesh(double T);

/// Bisects every element at its midpoint.
Mesh1D refine_uniform(const Mesh1D& mesh);

/// Applies refine_uniform `times` times.
Mesh1D refine_uniform(const Mesh1D& mesh, int times);

MeshStats mesh_stats(const Mesh1D& mesh);

} // namespace stwave
