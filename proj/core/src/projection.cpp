#include "stwave/projection.hpp"

#include <algorithm>
#include <string>

#include "stwave/exceptions.hpp"

namespace stwave {

std::vector<double> project_element(const ScalarFunction& f, double a, double b, int q, const QuadratureRule& quad) {
    if (!(b > a)) {
        throw InvalidParameter("project_element: degenerate element (" + std::to_string(a) + ", " +
                               std::to_string(b) + ")");
    }
    if (q < 0) {
        throw InvalidParameter("project_element: negative projection degree");
    }
    const double h = b - a;
    std::vector<double> c(static_cast<std::size_t>(q) + 1, 0.0);
    for (std::size_t i = 0; i < quad.size(); ++i) {
        const double xi = quad.points[i];
        const double fw = f(a + h * xi) * quad.weights[i];
        for (int k = 0; k <= q; ++k) {
            c[k] += fw * shifted_legendre(k, xi);
        }
    }
    for (int k = 0; k <= q; ++k) {
        c[k] *= 2.0 * k + 1.0;
    }
    return c;
}

ProjectionCoeffs project(const ScalarFunction& f, const Mesh1D& mesh, int q, const QuadratureRule& quad) {
    ProjectionCoeffs out;
    out.degree = q;
    out.coeffs.reserve(mesh.num_elements());
    for (std::size_t l = 0; l < mesh.num_elements(); ++l) {
        out.coeffs.push_back(project_element(f, mesh.element_left(l), mesh.element_right(l), q, quad));
    }
    return out;
}

double evaluate_legendre_series(const std::vector<double>& coeffs, double xi) {
    double s = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        s += coeffs[k] * shifted_legendre(static_cast<int>(k), xi);
    }
    return s;
}

double evaluate(const ProjectionCoeffs& proj, const Mesh1D& mesh, double t) {
    const auto v = mesh.vertices();
    if (t < v.front() || t > v.back()) {
        throw InvalidParameter("evaluate: point outside the mesh");
    }
    auto it = std::upper_bound(v.begin(), v.end(), t);
    std::size_t l = it == v.begin() ? 0 : static_cast<std::size_t>(it - v.begin()) - 1;
    l = std::min(l, mesh.num_elements() - 1);
    const double xi = (t - mesh.element_left(l)) / mesh.element_size(l);
    return evaluate_legendre_series(proj.coeffs.at(l), xi);
}

DenseMatrix local_perturbed_mass(int p, int q, double h, const LagrangeBasis& basis) {
    if (p < 1 || q < 0 || !(h > 0.0) || static_cast<std::size_t>(p) + 1 != basis.size()) {
        throw InvalidParameter("local_perturbed_mass: need p >= 1 matching the basis, q >= 0, h > 0");
    }
    const std::size_t nb = basis.size();
    const auto quad = gauss_legendre(p + 1);
    // C[k][a]: Legendre coefficients of Q^q b_a on the reference element. Projection
    // modes above p vanish for a degree-p function, so q is clipped at p.
    const int qq = std::min(q, p);
    DenseMatrix c(static_cast<std::size_t>(qq) + 1, nb);
    for (int k = 0; k <= qq; ++k) {
        for (std::size_t a = 0; a < nb; ++a) {
            double s = 0.0;
            for (std::size_t i = 0; i < quad.size(); ++i) {
                s += quad.weights[i] * basis.eval(a, quad.points[i]) * shifted_legendre(k, quad.points[i]);
            }
            c(k, a) = (2.0 * k + 1.0) * s;
        }
    }
    DenseMatrix g(nb, nb);
    for (std::size_t a = 0; a < nb; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            double s = 0.0;
            for (int k = 0; k <= qq; ++k) {
                s += c(k, a) * c(k, b) / (2.0 * k + 1.0);
            }
            g(a, b) = h * s;
        }
    }
    return g;
}

DenseMatrix local_mass(double h, const LagrangeBasis& basis) {
    const std::size_t nb = basis.size();
    const auto quad = gauss_legendre(basis.degree() + 1);
    DenseMatrix m(nb, nb);
    for (std::size_t i = 0; i < quad.size(); ++i) {
        const double xi = quad.points[i];
        for (std::size_t a = 0; a < nb; ++a) {
            for (std::size_t b = 0; b < nb; ++b) {
                m(a, b) += quad.weights[i] * basis.eval(a, xi) * basis.eval(b, xi);
            }
        }
    }
    for (std::size_t a = 0; a < nb; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            m(a, b) *= h;
        }
    }
    return m;
}

DenseMatrix local_stiffness(double h, const LagrangeBasis& basis) {
    const std::size_t nb = basis.size();
    const auto quad = gauss_legendre(basis.degree() + 1);
    DenseMatrix k(nb, nb);
    for (std::size_t i = 0; i < quad.size(); ++i) {
        const double xi = quad.points[i];
        for (std::size_t a = 0; a < nb; ++a) {
            for (std::size_t b = 0; b < nb; ++b) {
                k(a, b) += quad.weights[i] * basis.deriv(a, xi) * basis.deriv(b, xi);
            }
        }
    }
    for (std::size_t a = 0; a < nb; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            k(a, b) /= h;
        }
    }
    return k;
}

} // namespace stwave
