#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "stwave/exceptions.hpp"
#include "stwave/projection.hpp"

using namespace stwave;

namespace {

double l2_on(const std::function<double(double)>& f, double a, double b) {
    return std::sqrt(oracle::integrate([&](double t) { return f(t) * f(t); }, a, b));
}

std::function<double(double)> projected(const std::function<double(double)>& f, double a, double b, int q,
                                        const QuadratureRule& quad) {
    const auto c = project_element(f, a, b, q, quad);
    return [c, a, b](double t) { return evaluate_legendre_series(c, (t - a) / (b - a)); };
}

} // namespace

TEST_SUITE("projection") {

TEST_CASE("mean value for q = 0") {
    const double h = 0.37;
    const auto c = project_element([](double t) { return t; }, 0.0, h, 0, gauss_legendre(2));
    REQUIRE(c.size() == 1);
    CHECK(c[0] == doctest::Approx(h / 2.0).epsilon(1e-15));
}

TEST_CASE("constants are reproduced for every q") {
    for (int q = 0; q <= 6; ++q) {
        const auto c = project_element([](double) { return -2.5; }, 1.0, 3.0, q, gauss_legendre(q + 1));
        REQUIRE(c.size() == static_cast<std::size_t>(q + 1));
        CHECK(c[0] == doctest::Approx(-2.5).epsilon(1e-15));
        for (int k = 1; k <= q; ++k) {
            CHECK(std::abs(c[k]) < 1e-14);
        }
    }
}

TEST_CASE("projection of x^2 onto P^1") {
    // Normal equations by hand: [[1, 1/2], [1/2, 1/3]] (a, b) = (1/3, 1/4) gives a = -1/6, b = 1.
    const auto c = project_element([](double x) { return x * x; }, 0.0, 1.0, 1, gauss_legendre(3));
    for (double x : {0.0, 0.25, 0.6, 1.0}) {
        CHECK(evaluate_legendre_series(c, x) == doctest::Approx(x - 1.0 / 6.0).epsilon(1e-14));
    }
    const auto oracle_poly = oracle::normal_equation_projection([](double x) { return x * x; }, 0.0, 1.0, 1);
    CHECK(oracle_poly.c[0] == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
    CHECK(oracle_poly.c[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("agreement with the normal-equation oracle") {
    const auto f = [](double t) { return std::exp(t) * std::sin(3.0 * t); };
    for (int q = 0; q <= 4; ++q) {
        const auto ours = projected(f, 0.5, 1.25, q, gauss_legendre(20));
        const auto ref = oracle::normal_equation_projection(f, 0.5, 1.25, q);
        for (double t : {0.5, 0.6, 0.9, 1.1, 1.25}) {
            CHECK(std::abs(ours(t) - ref(t)) < 1e-9);
        }
    }
}

TEST_CASE("idempotence") {
    for (int q = 0; q <= 6; ++q) {
        const auto f = [](double t) { return std::cos(2.0 * t) + t * t * t; };
        const auto quad = gauss_legendre(q + 8);
        const auto c1 = project_element(f, -0.3, 0.9, q, quad);
        const auto c2 = project_element(projected(f, -0.3, 0.9, q, quad), -0.3, 0.9, q, quad);
        for (int k = 0; k <= q; ++k) {
            CHECK(std::abs(c1[k] - c2[k]) < 1e-13);
        }
    }
}

TEST_CASE("polynomial reproduction") {
    for (int q = 0; q <= 7; ++q) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto poly = oracle::random_polynomial(q);
            const std::function<double(double)> f = poly;
            const auto qf = projected(f, 0.2, 1.7, q, gauss_legendre(q + 1));
            const double diff = l2_on([&](double t) { return qf(t) - f(t); }, 0.2, 1.7);
            CHECK(diff < 1e-12 * l2_on(f, 0.2, 1.7));
        }
    }
}

TEST_CASE("L2 stability on random polynomials of degree q+3") {
    for (int q = 0; q <= 5; ++q) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto poly = oracle::random_polynomial(q + 3);
            const std::function<double(double)> f = poly;
            const auto qf = projected(f, 0.0, 1.3, q, gauss_legendre(q + 4));
            CHECK(l2_on(qf, 0.0, 1.3) <= l2_on(f, 0.0, 1.3) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("self-adjointness") {
    for (int q = 0; q <= 5; ++q) {
        for (int trial = 0; trial < 10; ++trial) {
            const std::function<double(double)> f = oracle::random_polynomial(q + 3);
            const std::function<double(double)> g = oracle::random_polynomial(q + 2);
            const auto quad = gauss_legendre(q + 4);
            const auto qf = projected(f, -1.0, 0.5, q, quad);
            const auto qg = projected(g, -1.0, 0.5, q, quad);
            const double lhs = oracle::integrate([&](double t) { return qf(t) * g(t); }, -1.0, 0.5);
            const double rhs = oracle::integrate([&](double t) { return f(t) * qg(t); }, -1.0, 0.5);
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("projection over a mesh") {
    const Mesh1D mesh({0.0, 0.5, 1.5, 2.0});
    const auto f = [](double t) { return t < 0.5 ? 1.0 : (t < 1.5 ? t : -t); };
    const auto proj = project(f, mesh, 1, gauss_legendre(2));
    REQUIRE(proj.coeffs.size() == 3);
    CHECK(proj.degree == 1);
    CHECK(evaluate(proj, mesh, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(evaluate(proj, mesh, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(evaluate(proj, mesh, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(evaluate(proj, mesh, 2.0) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("invalid projections") {
    const auto f = [](double t) { return t; };
    CHECK_THROWS_AS(project_element(f, 1.0, 1.0, 0, gauss_legendre(2)), InvalidParameter);
    CHECK_THROWS_AS(project_element(f, 2.0, 1.0, 0, gauss_legendre(2)), InvalidParameter);
    CHECK_THROWS_AS(project_element(f, 0.0, 1.0, -1, gauss_legendre(2)), InvalidParameter);
}

TEST_CASE("perturbed mass for p = 1, q = 0") {
    for (double h : {1.0, 0.25, 3.7}) {
        const auto g = local_perturbed_mass(1, 0, h, LagrangeBasis(1));
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                CHECK(g(a, b) == doctest::Approx(h / 4.0).epsilon(1e-15));
            }
        }
    }
}

TEST_CASE("perturbed mass with q = p is the exact mass") {
    for (int p = 1; p <= 8; ++p) {
        const LagrangeBasis basis(p);
        const auto g = local_perturbed_mass(p, p, 0.8, basis);
        const auto m = local_mass(0.8, basis);
        for (std::size_t a = 0; a < basis.size(); ++a) {
            for (std::size_t b = 0; b < basis.size(); ++b) {
                CHECK(std::abs(g(a, b) - m(a, b)) < 1e-13);
            }
        }
    }
}

TEST_CASE("perturbed mass p = 2, q = 1 against brute-force quadrature") {
    for (auto placement : {NodePlacement::gauss_lobatto, NodePlacement::equispaced}) {
        const LagrangeBasis basis(2, placement);
        const std::vector<double> nodes(basis.nodes().begin(), basis.nodes().end());
        const auto g = local_perturbed_mass(2, 1, 1.0, basis);
        for (std::size_t a = 0; a < 3; ++a) {
            const auto qa = oracle::normal_equation_projection([&](double x) { return oracle::lagrange(nodes, a, x); },
                                                               0.0, 1.0, 1);
            for (std::size_t b = 0; b < 3; ++b) {
                const double ref =
                    oracle::integrate([&](double x) { return oracle::lagrange(nodes, b, x) * qa(x); }, 0.0, 1.0);
                CHECK(std::abs(g(a, b) - ref) < 1e-13);
            }
        }
    }
}

TEST_CASE("perturbed mass is symmetric positive semi-definite and linear in h") {
    for (int p = 1; p <= 8; ++p) {
        const LagrangeBasis basis(p);
        const auto g1 = local_perturbed_mass(p, p - 1, 1.0, basis);
        for (double h : {0.1, 0.37, 2.0, 7.5}) {
            const auto gh = local_perturbed_mass(p, p - 1, h, basis);
            for (std::size_t a = 0; a < basis.size(); ++a) {
                for (std::size_t b = 0; b < basis.size(); ++b) {
                    const double ref = h * g1(a, b);
                    CHECK(std::abs(gh(a, b) - ref) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(ref));
                }
            }
        }
        Eigen::MatrixXd dense(basis.size(), basis.size());
        for (std::size_t a = 0; a < basis.size(); ++a) {
            for (std::size_t b = 0; b < basis.size(); ++b) {
                CHECK(g1(a, b) == doctest::Approx(g1(b, a)).epsilon(1e-14));
                dense(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g1(a, b);
            }
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
        CHECK(eig.eigenvalues().minCoeff() > -1e-14);
        // q = p-1 loses exactly one direction: the degree-p Legendre mode.
        CHECK(std::abs(eig.eigenvalues().minCoeff()) < 1e-13);
    }
}

TEST_CASE("exact local mass and stiffness against quadrature") {
    for (int p = 1; p <= 6; ++p) {
        const LagrangeBasis basis(p);
        const std::vector<double> nodes(basis.nodes().begin(), basis.nodes().end());
        const double h = 0.3;
        const auto m = local_mass(h, basis);
        const auto k = local_stiffness(h, basis);
        for (std::size_t a = 0; a < basis.size(); ++a) {
            for (std::size_t b = 0; b < basis.size(); ++b) {
                const double mref = h * oracle::integrate(
                                            [&](double x) {
                                                return oracle::lagrange(nodes, a, x) * oracle::lagrange(nodes, b, x);
                                            },
                                            0.0, 1.0);
                const double kref = oracle::integrate(
                                        [&](double x) {
                                            return oracle::lagrange_deriv(nodes, a, x) *
                                                   oracle::lagrange_deriv(nodes, b, x);
                                        },
                                        0.0, 1.0) /
                                    h;
                CHECK(std::abs(m(a, b) - mref) < 1e-13);
                CHECK(std::abs(k(a, b) - kref) < 1e-11 * std::max(1.0, std::abs(kref)));
            }
        }
    }
}

}
