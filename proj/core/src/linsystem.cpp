#include "stwave/linsystem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "stwave/band_lu.hpp"
#include "stwave/exceptions.hpp"

namespace stwave {

namespace {

void check_conforming(const KroneckerSystem& s) {
    const auto& t = s.temporal;
    const auto& x = s.spatial;
    const std::size_t nt = t.num_dofs;
    const std::size_t mx = x.num_dofs;
    if (t.stiffness.rows() != nt || t.stiffness.cols() != nt || t.mass.rows() != nt || t.mass.cols() != nt) {
        throw StructuralError("KroneckerSystem: temporal matrices must be " + std::to_string(nt) + "x" +
                              std::to_string(nt));
    }
    if (x.stiffness.rows() != mx || x.stiffness.cols() != mx || x.mass.rows() != mx || x.mass.cols() != mx) {
        throw StructuralError("KroneckerSystem: spatial matrices must be " + std::to_string(mx) + "x" +
                              std::to_string(mx));
    }
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

// Diagonal blocks of a block lower-triangular pattern: block [s, e) closes at the first
// e where no row in [0, e) references a column >= e.
std::vector<std::size_t> lower_triangular_blocks(const SparseMatrix& a, const SparseMatrix& b) {
    std::vector<std::size_t> bounds{0};
    std::size_t reach = 0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (const SparseMatrix* m : {&a, &b}) {
            const auto ptr = m->row_ptr();
            if (ptr[i] != ptr[i + 1]) {
                reach = std::max(reach, m->col_idx()[ptr[i + 1] - 1]);
            }
        }
        if (reach <= i) {
            bounds.push_back(i + 1);
        }
    }
    if (bounds.back() != n) {
        bounds.push_back(n);
    }
    return bounds;
}

std::size_t spatial_bandwidth(const SpatialMatrices& x) {
    return std::max({x.mass.lower_bandwidth(), x.mass.upper_bandwidth(), x.stiffness.lower_bandwidth(),
                     x.stiffness.upper_bandwidth()});
}

// Diagonal block rows/cols [s, e) of K, unknowns ordered space-major (j * bs + k).
BandMatrix block_matrix(const KroneckerSystem& sys, std::size_t s, std::size_t e) {
    const std::size_t bs = e - s;
    const std::size_t mx = sys.spatial.num_dofs;
    const std::size_t bw = bs * spatial_bandwidth(sys.spatial) + bs - 1;
    BandMatrix band(bs * mx, bw, bw);
    auto scatter = [&](const SparseMatrix& tm, const SparseMatrix& xm, double sign) {
        const auto tptr = tm.row_ptr();
        const auto xptr = xm.row_ptr();
        for (std::size_t n = s; n < e; ++n) {
            for (std::size_t kt = tptr[n]; kt < tptr[n + 1]; ++kt) {
                const std::size_t c = tm.col_idx()[kt];
                if (c < s || c >= e) {
                    continue;
                }
                const double tv = sign * tm.values()[kt];
                for (std::size_t i = 0; i < mx; ++i) {
                    for (std::size_t kx = xptr[i]; kx < xptr[i + 1]; ++kx) {
                        const std::size_t j = xm.col_idx()[kx];
                        band.add(i * bs + (n - s), j * bs + (c - s), tv * xm.values()[kx]);
                    }
                }
            }
        }
    };
    scatter(sys.temporal.stiffness, sys.spatial.mass, -1.0);
    scatter(sys.temporal.mass, sys.spatial.stiffness, 1.0);
    return band;
}

std::vector<double> dense_block(const SparseMatrix& m, std::size_t s, std::size_t e) {
    std::vector<double> out;
    out.reserve((e - s) * (e - s));
    for (std::size_t n = s; n < e; ++n) {
        for (std::size_t c = s; c < e; ++c) {
            out.push_back(m.at(n, c));
        }
    }
    return out;
}

std::vector<double> solve_time_marching(const KroneckerSystem& sys, std::span<const double> rhs,
                                        const SolveOptions& options) {
    const auto& tm = sys.temporal;
    const std::size_t mx = sys.spatial.num_dofs;
    const auto bounds = lower_triangular_blocks(tm.stiffness, tm.mass);

    std::vector<double> u(rhs.size(), 0.0);
    std::vector<double> mu(rhs.size(), 0.0);
    std::vector<double> au(rhs.size(), 0.0);
    std::vector<double> b;

    // Blocks of equal-size time elements are identical; factor each distinct block once.
    std::map<std::vector<double>, std::shared_ptr<const BandLU>> factors;

    for (std::size_t blk = 0; blk + 1 < bounds.size(); ++blk) {
        const std::size_t s = bounds[blk];
        const std::size_t e = bounds[blk + 1];
        const std::size_t bs = e - s;

        // Right-hand side of this block minus the coupling to already solved blocks.
        b.assign(bs * mx, 0.0);
        for (std::size_t n = s; n < e; ++n) {
            for (std::size_t i = 0; i < mx; ++i) {
                b[i * bs + (n - s)] = rhs[n * mx + i];
            }
            auto subtract = [&](const SparseMatrix& m, const std::vector<double>& prod, double sign) {
                const auto ptr = m.row_ptr();
                for (std::size_t k = ptr[n]; k < ptr[n + 1]; ++k) {
                    const std::size_t c = m.col_idx()[k];
                    if (c >= s) {
                        continue;
                    }
                    const double v = sign * m.values()[k];
                    for (std::size_t i = 0; i < mx; ++i) {
                        b[i * bs + (n - s)] -= v * prod[c * mx + i];
                    }
                }
            };
            subtract(tm.stiffness, mu, -1.0);
            subtract(tm.mass, au, 1.0);
        }

        auto key = dense_block(tm.stiffness, s, e);
        const auto mass_block = dense_block(tm.mass, s, e);
        key.insert(key.end(), mass_block.begin(), mass_block.end());
        auto it = factors.find(key);
        if (it == factors.end()) {
            try {
                auto lu = std::make_shared<const BandLU>(block_matrix(sys, s, e), options.pivot_tolerance);
                it = factors.emplace(std::move(key), std::move(lu)).first;
            } catch (const SolverFailure& failure) {
                // Map the block-local pivot back to the global time-major index.
                const std::size_t local = failure.pivot();
                const std::size_t global = (s + local % bs) * mx + local / bs;
                throw SolverFailure("time-marching block " + std::to_string(blk) +
                                        ": singular or numerically rank-deficient block",
                                    global);
            }
        }
        it->second->solve_in_place(b);

        for (std::size_t c = s; c < e; ++c) {
            for (std::size_t i = 0; i < mx; ++i) {
                u[c * mx + i] = b[i * bs + (c - s)];
            }
            const std::span<const double> uc(u.data() + c * mx, mx);
            sys.spatial.mass.multiply(uc, std::span<double>(mu.data() + c * mx, mx));
            sys.spatial.stiffness.multiply(uc, std::span<double>(au.data() + c * mx, mx));
        }
    }
    return u;
}

std::vector<double> solve_banded(const KroneckerSystem& sys, std::span<const double> rhs,
                                 const SolveOptions& options) {
    const auto k = flatten(sys);
    BandMatrix band(k.rows(), k.lower_bandwidth(), k.upper_bandwidth());
    const auto ptr = k.row_ptr();
    for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t e = ptr[i]; e < ptr[i + 1]; ++e) {
            band.add(i, k.col_idx()[e], k.values()[e]);
        }
    }
    const BandLU lu(std::move(band), options.pivot_tolerance);
    return lu.solve(rhs);
}

} // namespace

SparseMatrix flatten(const KroneckerSystem& system) {
    check_conforming(system);
    const auto& t = system.temporal;
    const auto& x = system.spatial;
    const std::size_t mx = x.num_dofs;
    const std::size_t dim = system.dimension();
    TripletBuilder builder(dim, dim);
    builder.reserve(t.stiffness.nonzeros() * x.mass.nonzeros() + t.mass.nonzeros() * x.stiffness.nonzeros());
    auto add_product = [&](const SparseMatrix& tm, const SparseMatrix& xm, double sign) {
        const auto tptr = tm.row_ptr();
        const auto xptr = xm.row_ptr();
        for (std::size_t n = 0; n < tm.rows(); ++n) {
            for (std::size_t kt = tptr[n]; kt < tptr[n + 1]; ++kt) {
                const std::size_t c = tm.col_idx()[kt];
                const double tv = sign * tm.values()[kt];
                for (std::size_t i = 0; i < mx; ++i) {
                    for (std::size_t kx = xptr[i]; kx < xptr[i + 1]; ++kx) {
                        builder.add(n * mx + i, c * mx + xm.col_idx()[kx], tv * xm.values()[kx]);
                    }
                }
            }
        }
    };
    add_product(t.stiffness, x.mass, -1.0);
    add_product(t.mass, x.stiffness, 1.0);
    return builder.build();
}

std::vector<double> apply(const KroneckerSystem& system, std::span<const double> v) {
    check_conforming(system);
    const std::size_t mx = system.spatial.num_dofs;
    const std::size_t nt = system.temporal.num_dofs;
    if (v.size() != system.dimension()) {
        throw StructuralError("apply: vector has length " + std::to_string(v.size()) + ", expected " +
                              std::to_string(system.dimension()));
    }
    // Columns of V are the temporal blocks v_c; form M V and A V once.
    std::vector<double> mv(v.size());
    std::vector<double> av(v.size());
    for (std::size_t c = 0; c < nt; ++c) {
        const auto vc = v.subspan(c * mx, mx);
        system.spatial.mass.multiply(vc, std::span<double>(mv.data() + c * mx, mx));
        system.spatial.stiffness.multiply(vc, std::span<double>(av.data() + c * mx, mx));
    }
    std::vector<double> out(v.size(), 0.0);
    auto accumulate = [&](const SparseMatrix& tm, const std::vector<double>& prod, double sign) {
        const auto ptr = tm.row_ptr();
        for (std::size_t n = 0; n < nt; ++n) {
            for (std::size_t k = ptr[n]; k < ptr[n + 1]; ++k) {
                const double w = sign * tm.values()[k];
                const double* src = prod.data() + tm.col_idx()[k] * mx;
                double* dst = out.data() + n * mx;
                for (std::size_t i = 0; i < mx; ++i) {
                    dst[i] += w * src[i];
                }
            }
        }
    };
    accumulate(system.temporal.stiffness, mv, -1.0);
    accumulate(system.temporal.mass, av, 1.0);
    return out;
}

SolveResult solve(const KroneckerSystem& system, std::span<const double> rhs, const SolveOptions& options) {
    check_conforming(system);
    if (rhs.size() != system.dimension()) {
        throw StructuralError("solve: right-hand side has length " + std::to_string(rhs.size()) + ", expected " +
                              std::to_string(system.dimension()));
    }
    SolveResult result;
    result.solution = options.kind == SolverKind::time_marching ? solve_time_marching(system, rhs, options)
                                                                : solve_banded(system, rhs, options);
    auto r = stwave::apply(system, result.solution);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= rhs[i];
    }
    const double fn = norm2(rhs);
    const double rn = norm2(r);
    result.relative_residual = fn > 0.0 ? rn / fn : rn;
    result.residual_ok = std::isfinite(result.relative_residual) && result.relative_residual <= options.residual_tolerance;
    if (!result.residual_ok) {
        result.warning = "relative residual " + std::to_string(result.relative_residual) + " exceeds tolerance " +
                         std::to_string(options.residual_tolerance);
    }
    return result;
}

std::size_t estimate_solver_bytes(std::size_t spatial_dofs, std::size_t temporal_dofs, int p, SolverKind kind) {
    const std::size_t dof = spatial_dofs * temporal_dofs;
    const std::size_t pp = static_cast<std::size_t>(p);
    // rhs, solution, M u, A u, residual and two apply() scratch vectors.
    std::size_t bytes = 7 * dof * sizeof(double);
    if (kind == SolverKind::time_marching) {
        const std::size_t bw = pp * pp + pp - 1;
        bytes += (3 * bw + 1) * pp * spatial_dofs * sizeof(double) * 3;
    } else {
        const std::size_t kl = (pp + 1) * spatial_dofs + pp;
        const std::size_t ku = (pp - 1) * spatial_dofs + pp;
        bytes += (2 * kl + ku + 1) * dof * sizeof(double);
        // Flattened matrix in triplet and compressed form.
        bytes += dof * (2 * pp + 1) * (2 * pp + 1) * 2 * 3 * sizeof(double);
    }
    return bytes;
}

} // namespace stwave
