#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "stwave/assembly.hpp"
#include "stwave/exceptions.hpp"
#include "stwave/projection.hpp"
#include "stwave/solutions.hpp"

using namespace stwave;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

Mesh1D uniform_mesh(double a, double b, std::size_t n) {
    std::vector<double> v(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        v[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n);
    }
    v.back() = b;
    return Mesh1D(std::move(v));
}

double max_abs(const SparseMatrix& m) {
    double s = 0.0;
    for (double v : m.values()) {
        s = std::max(s, std::abs(v));
    }
    return s;
}

// Hat function of node i on a p = 1 mesh.
double hat(const Mesh1D& m, std::size_t i, double x) {
    const auto v = m.vertices();
    if (i > 0 && x >= v[i - 1] && x <= v[i]) {
        return (x - v[i - 1]) / (v[i] - v[i - 1]);
    }
    if (i + 1 < v.size() && x >= v[i] && x <= v[i + 1]) {
        return (v[i + 1] - x) / (v[i + 1] - v[i]);
    }
    return 0.0;
}

} // namespace

TEST_SUITE("assembly") {

TEST_CASE("spatial matrices on the start mesh for p = 1") {
    const auto s = assemble_spatial(starting_spatial_mesh(), LagrangeBasis(1));
    REQUIRE(s.num_dofs == 1);
    CHECK(s.stiffness.at(0, 0) == doctest::Approx(16.0 / 3.0).epsilon(1e-15));
    CHECK(s.mass.at(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("spatial matrices on a uniform p = 1 mesh") {
    const std::size_t n = 8;
    const double h = 1.0 / n;
    const auto s = assemble_spatial(uniform_mesh(0.0, 1.0, n), LagrangeBasis(1));
    REQUIRE(s.num_dofs == n - 1);
    for (std::size_t i = 0; i < n - 1; ++i) {
        for (std::size_t j = 0; j < n - 1; ++j) {
            const double a = i == j ? 2.0 / h : (i + 1 == j || j + 1 == i ? -1.0 / h : 0.0);
            const double m = i == j ? 2.0 * h / 3.0 : (i + 1 == j || j + 1 == i ? h / 6.0 : 0.0);
            CHECK(s.stiffness.at(i, j) == doctest::Approx(a).epsilon(1e-14));
            CHECK(s.mass.at(i, j) == doctest::Approx(m).epsilon(1e-14));
        }
    }
}

TEST_CASE("spatial matrices are symmetric positive definite and banded") {
    for (int p = 1; p <= 6; ++p) {
        const auto mesh = refine_uniform(starting_spatial_mesh(), 2);
        const auto s = assemble_spatial(mesh, LagrangeBasis(p));
        CHECK(s.num_dofs == static_cast<std::size_t>(p) * mesh.num_elements() - 1);
        CHECK(s.stiffness.lower_bandwidth() <= static_cast<std::size_t>(p));
        CHECK(s.mass.upper_bandwidth() <= static_cast<std::size_t>(p));
        for (const SparseMatrix* m : {&s.mass, &s.stiffness}) {
            const double scale = max_abs(*m);
            for (std::size_t i = 0; i < s.num_dofs; ++i) {
                for (std::size_t j = 0; j < s.num_dofs; ++j) {
                    CHECK(std::abs(m->at(i, j) - m->at(j, i)) <= 1e-14 * scale);
                }
            }
            const Eigen::LLT<Eigen::MatrixXd> llt(Eigen::Map<const Eigen::MatrixXd>(
                m->to_dense().data().data(), static_cast<Eigen::Index>(s.num_dofs),
                static_cast<Eigen::Index>(s.num_dofs)));
            CHECK(llt.info() == Eigen::Success);
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<double> u(s.num_dofs);
                for (auto& v : u) {
                    v = oracle::uniform(-1.0, 1.0);
                }
                const auto mu = m->multiply(u);
                double q = 0.0;
                for (std::size_t i = 0; i < u.size(); ++i) {
                    q += u[i] * mu[i];
                }
                CHECK(q > 0.0);
            }
        }
    }
}

TEST_CASE("temporal parent matrices for p = 1 on a uniform mesh") {
    const double h = 0.5;
    const auto mesh = uniform_mesh(0.0, 3.0, 6);
    const LagrangeBasis basis(1);
    const auto stab = assemble_temporal_parent(mesh, basis, 0);
    const auto exact = assemble_temporal_parent(mesh, basis, -1);
    REQUIRE(stab.mass.rows() == 7);
    for (std::size_t n = 0; n <= 6; ++n) {
        const double ends = n == 0 || n == 6;
        CHECK(stab.mass.at(n, n) == doctest::Approx(ends ? h / 4.0 : h / 2.0).epsilon(1e-15));
        CHECK(exact.mass.at(n, n) == doctest::Approx(ends ? h / 3.0 : 2.0 * h / 3.0).epsilon(1e-15));
        CHECK(stab.stiffness.at(n, n) == doctest::Approx(ends ? 1.0 / h : 2.0 / h).epsilon(1e-15));
        if (n < 6) {
            CHECK(stab.mass.at(n, n + 1) == doctest::Approx(h / 4.0).epsilon(1e-15));
            CHECK(exact.mass.at(n, n + 1) == doctest::Approx(h / 6.0).epsilon(1e-15));
            CHECK(stab.stiffness.at(n, n + 1) == doctest::Approx(-1.0 / h).epsilon(1e-15));
        }
        for (std::size_t m = n + 2; m <= 6; ++m) {
            CHECK(stab.mass.at(n, m) == 0.0);
            CHECK(stab.stiffness.at(n, m) == 0.0);
        }
    }
}

TEST_CASE("p = 1 stabilised mass matches the piecewise-constant scheme") {
    // Direct oracle: <Q0 phi_m, Q0 phi_n> with Q0 the element mean of each hat.
    const auto mesh = refine_uniform(starting_temporal_mesh(10.0), 1);
    const auto tm = assemble_temporal(mesh, LagrangeBasis(1), true);
    const std::size_t nt = mesh.num_elements();
    for (std::size_t n = 0; n < nt; ++n) {
        for (std::size_t c = 0; c < nt; ++c) {
            const std::size_t m = c + 1;
            double ref = 0.0;
            for (std::size_t e = 0; e < nt; ++e) {
                const double a = mesh.element_left(e);
                const double b = mesh.element_right(e);
                const double mean_m = oracle::integrate([&](double t) { return hat(mesh, m, t); }, a, b) / (b - a);
                const double mean_n = oracle::integrate([&](double t) { return hat(mesh, n, t); }, a, b) / (b - a);
                ref += (b - a) * mean_m * mean_n;
            }
            CHECK(std::abs(tm.mass.at(n, c) - ref) < 1e-13);
        }
    }
}

TEST_CASE("projection degree p reproduces the exact temporal mass") {
    const auto mesh = refine_uniform(starting_temporal_mesh(10.0), 1);
    for (int p = 1; p <= 6; ++p) {
        const LagrangeBasis basis(p);
        const auto exact = assemble_temporal(mesh, basis, false);
        const auto full = assemble_temporal(mesh, basis, true, p);
        CHECK(!exact.stabilised);
        for (std::size_t n = 0; n < exact.num_dofs; ++n) {
            for (std::size_t c = 0; c < exact.num_dofs; ++c) {
                CHECK(std::abs(exact.mass.at(n, c) - full.mass.at(n, c)) < 1e-13);
            }
        }
    }
}

TEST_CASE("parent symmetry and truncation") {
    const auto mesh = refine_uniform(starting_temporal_mesh(10.0), 1);
    for (int p = 1; p <= 6; ++p) {
        const LagrangeBasis basis(p);
        for (bool stabilised : {true, false}) {
            const auto parent = assemble_temporal_parent(mesh, basis, stabilised ? p - 1 : -1);
            const auto tm = assemble_temporal(mesh, basis, stabilised);
            const std::size_t n_all = parent.mass.rows();
            REQUIRE(n_all == static_cast<std::size_t>(p) * mesh.num_elements() + 1);
            REQUIRE(tm.num_dofs == n_all - 1);
            for (const SparseMatrix* m : {&parent.mass, &parent.stiffness}) {
                const double scale = max_abs(*m);
                for (std::size_t i = 0; i < n_all; ++i) {
                    for (std::size_t j = 0; j < n_all; ++j) {
                        CHECK(std::abs(m->at(i, j) - m->at(j, i)) <= 1e-13 * scale);
                    }
                }
            }
            for (std::size_t n = 0; n + 1 < n_all; ++n) {
                for (std::size_t c = 0; c + 1 < n_all; ++c) {
                    CHECK(tm.mass.at(n, c) == parent.mass.at(n, c + 1));
                    CHECK(tm.stiffness.at(n, c) == parent.stiffness.at(n, c + 1));
                }
            }
        }
    }
}

TEST_CASE("temporal block band structure") {
    const auto mesh = refine_uniform(starting_temporal_mesh(10.0), 2);
    for (int p = 1; p <= 4; ++p) {
        const auto tm = assemble_temporal(mesh, LagrangeBasis(p), true);
        for (std::size_t n = 0; n < tm.num_dofs; ++n) {
            for (std::size_t c = 0; c < tm.num_dofs; ++c) {
                const std::size_t m = c + 1;
                // Supports of phi_n and phi_m overlap iff they share an element.
                const std::size_t en_lo = n == 0 ? 0 : (n - 1) / p;
                const std::size_t en_hi = n / p;
                const std::size_t em_lo = (m - 1) / p;
                const std::size_t em_hi = m / p;
                const bool overlap = en_lo <= em_hi && em_lo <= en_hi;
                if (!overlap) {
                    CHECK(tm.mass.at(n, c) == 0.0);
                    CHECK(tm.stiffness.at(n, c) == 0.0);
                }
            }
        }
    }
}

TEST_CASE("temporal matrices under dilation") {
    const auto mesh = refine_uniform(starting_temporal_mesh(1.0), 1);
    const double c = 3.0;
    std::vector<double> dilated(mesh.vertices().begin(), mesh.vertices().end());
    for (auto& v : dilated) {
        v *= c;
    }
    for (int p = 1; p <= 6; ++p) {
        const LagrangeBasis basis(p);
        const auto a = assemble_temporal(mesh, basis, true);
        const auto b = assemble_temporal(Mesh1D(dilated), basis, true);
        for (std::size_t n = 0; n < a.num_dofs; ++n) {
            for (std::size_t m = 0; m < a.num_dofs; ++m) {
                const double ms = c * a.mass.at(n, m);
                const double as = a.stiffness.at(n, m) / c;
                CHECK(std::abs(b.mass.at(n, m) - ms) <= 4.0 * eps * (std::abs(ms) + 1e-300) + 1e-300);
                CHECK(std::abs(b.stiffness.at(n, m) - as) <= 4.0 * eps * std::abs(as) + 1e-300);
            }
        }
    }
}

TEST_CASE("load vector of zero and constant right-hand sides") {
    const auto mx = starting_spatial_mesh();
    const auto mt = starting_temporal_mesh(10.0);
    const LagrangeBasis basis(1);
    const QuadraturePlan px(mx, {5});
    const QuadraturePlan pt(mt, {5});

    const auto zero = assemble_load([](double, double) { return 0.0; }, mx, mt, basis, px, pt);
    REQUIRE(zero.size() == 3);
    for (double v : zero) {
        CHECK(v == 0.0);
    }

    // Hat integrals: interior spatial node 1 -> (0.25 + 0.75)/2; temporal nodes 0, 1, 2 ->
    // 1.25/2, (1.25 + 1.25)/2, (1.25 + 7.5)/2.
    const double c = 1.7;
    const auto load = assemble_load([c](double, double) { return c; }, mx, mt, basis, px, pt);
    const double ix = 0.5;
    const std::vector<double> it{0.625, 1.25, 4.375};
    for (std::size_t n = 0; n < 3; ++n) {
        CHECK(load[n] == doctest::Approx(c * ix * it[n]).epsilon(1e-14));
    }
}

TEST_CASE("load vector of f = 1 sums to the spatial integral times T") {
    const auto mx = refine_uniform(starting_spatial_mesh(), 1);
    const auto mt = refine_uniform(starting_temporal_mesh(10.0), 1);
    for (int p = 1; p <= 4; ++p) {
        const LagrangeBasis basis(p);
        const QuadraturePlan px(mx, {p + 4});
        const QuadraturePlan pt(mt, {p + 4});
        const auto load = assemble_load([](double, double) { return 1.0; }, mx, mt, basis, px, pt);
        const auto space = assemble_load([](double, double) { return 1.0; }, mx, Mesh1D({0.0, 1.0}), basis, px,
                                         QuadraturePlan(Mesh1D({0.0, 1.0}), {p + 4}));
        const std::size_t m_x = static_cast<std::size_t>(p) * mx.num_elements() - 1;
        const std::size_t n_t = static_cast<std::size_t>(p) * mt.num_elements();
        REQUIRE(load.size() == m_x * n_t);
        // The node at T is not a test function; add its integral back.
        const auto last_hat = [&](double h) {
            const auto m = local_mass(h, basis);
            double v = 0.0;
            for (std::size_t a = 0; a < basis.size(); ++a) {
                v += m(basis.size() - 1, a);
            }
            return v;
        };
        const double last_integral = last_hat(mt.element_size(mt.num_elements() - 1));
        for (std::size_t i = 0; i < m_x; ++i) {
            // On [0, 1] the rows sum to the integral of psi_i times (1 - last_hat(1)).
            double psi_integral = 0.0;
            for (std::size_t n = 0; n < static_cast<std::size_t>(p); ++n) {
                psi_integral += space[n * m_x + i];
            }
            psi_integral /= 1.0 - last_hat(1.0);
            double sum = 0.0;
            for (std::size_t n = 0; n < n_t; ++n) {
                sum += load[n * m_x + i];
            }
            CHECK(sum + psi_integral * last_integral == doctest::Approx(psi_integral * 10.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("manufactured load vector against four times the quadrature points") {
    const auto u1 = make_u1(10.0);
    const auto mx = refine_uniform(starting_spatial_mesh(), 2);
    const auto mt = refine_uniform(starting_temporal_mesh(10.0), 2);
    for (int p : {1, 2, 6}) {
        const LagrangeBasis basis(p);
        const auto load = assemble_load(u1.f, mx, mt, basis, QuadraturePlan(mx, {p + 4, 1.0 / 64.0}),
                                        QuadraturePlan(mt, {p + 4, 10.0 / 64.0}));
        const auto ref = assemble_load(u1.f, mx, mt, basis, QuadraturePlan(mx, {4 * (p + 4), 1.0 / 64.0}),
                                       QuadraturePlan(mt, {4 * (p + 4), 10.0 / 64.0}));
        double diff = 0.0;
        double norm = 0.0;
        for (std::size_t k = 0; k < load.size(); ++k) {
            diff += (load[k] - ref[k]) * (load[k] - ref[k]);
            norm += ref[k] * ref[k];
        }
        CHECK(std::sqrt(diff / norm) < 1e-10);
    }
}

TEST_CASE("load vector entries against an adaptive oracle for p = 1") {
    const auto u1 = make_u1(10.0);
    const auto mx = starting_spatial_mesh();
    const auto mt = starting_temporal_mesh(10.0);
    const auto load = assemble_load(u1.f, mx, mt, LagrangeBasis(1), QuadraturePlan(mx, {5, 1.0 / 64.0}),
                                    QuadraturePlan(mt, {5, 10.0 / 64.0}));
    const auto inner = [&](double t) {
        const auto g = [&](double x) { return u1.f(x, t) * hat(mx, 1, x); };
        return oracle::integrate(g, 0.0, 0.25) + oracle::integrate(g, 0.25, 1.0);
    };
    const auto v = mt.vertices();
    for (std::size_t n = 0; n < 3; ++n) {
        const auto g = [&](double t) { return hat(mt, n, t) * inner(t); };
        double ref = oracle::integrate(g, v[n], v[n + 1]);
        if (n > 0) {
            ref += oracle::integrate(g, v[n - 1], v[n]);
        }
        CHECK(load[n] == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("non-finite right-hand side") {
    const auto mx = starting_spatial_mesh();
    const auto mt = starting_temporal_mesh(10.0);
    const auto bad = [](double x, double t) { return x > 0.5 && t > 5.0 ? std::nan("") : 1.0; };
    CHECK_THROWS_AS(assemble_load(bad, mx, mt, LagrangeBasis(1), QuadraturePlan(mx, {3}), QuadraturePlan(mt, {3})),
                    EvaluationError);
}

TEST_CASE("quadrature plans") {
    const auto mt = starting_temporal_mesh(10.0);
    const QuadraturePlan plain(mt, {4});
    CHECK(plain.num_elements() == 3);
    CHECK(plain.rules().size() == 1);
    CHECK(plain.rule(2).size() == 4);

    const QuadraturePlan split(mt, {4, 2.0});
    // Elements of size 1.25, 1.25, 7.5 -> 1, 1, 4 pieces.
    CHECK(split.rule(0).size() == 4);
    CHECK(split.rule(2).size() == 16);
    CHECK(split.rule_index(0) == split.rule_index(1));

    const QuadraturePlan graded(mt, {4, 2.0, true, 30});
    CHECK(graded.rule(2).size() == 4 * (3 + 30));
    CHECK(graded.rule(1).size() == 4);
    double wsum = 0.0;
    for (double w : graded.rule(2).weights) {
        wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(graded.rule(2).points.back() < 1.0);
}

}
