#include "stwave/polybasis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stwave/exceptions.hpp"

namespace stwave {

namespace {

// Legendre P_n(z) on [-1,1] and its derivative.
std::pair<double, double> legendre_with_derivative(int n, double z) {
    double p0 = 1.0;
    double p1 = z;
    if (n == 0) {
        return {1.0, 0.0};
    }
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * z * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    // P_n' = n (z P_n - P_{n-1}) / (z^2 - 1), only used away from z = +-1.
    const double dp = n * (z * p1 - p0) / (z * z - 1.0);
    return {p1, dp};
}

constexpr double newton_tolerance = 1e-15;
constexpr int newton_max_iterations = 100;

// Interior Gauss-Lobatto points on [-1,1]: roots of P_p'.
std::vector<double> lobatto_interior(int p) {
    std::vector<double> roots;
    for (int j = 1; j < p; ++j) {
        double z = -std::cos(std::numbers::pi * j / p);
        for (int it = 0; it < newton_max_iterations; ++it) {
            const auto [pn, dpn] = legendre_with_derivative(p, z);
            const double d2pn = (2.0 * z * dpn - p * (p + 1.0) * pn) / (1.0 - z * z);
            const double step = dpn / d2pn;
            z -= step;
            if (std::abs(step) < newton_tolerance) {
                break;
            }
        }
        roots.push_back(z);
    }
    return roots;
}

} // namespace

QuadratureRule gauss_legendre(int n) {
    if (n < 1 || n > 64) {
        throw InvalidParameter("gauss_legendre: point count must be in [1, 64], got " + std::to_string(n));
    }
    QuadratureRule rule;
    rule.points.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < newton_max_iterations; ++it) {
            const auto [pn, d] = legendre_with_derivative(n, z);
            dp = d;
            const double step = pn / dp;
            z -= step;
            if (std::abs(step) < newton_tolerance) {
                break;
            }
        }
        dp = legendre_with_derivative(n, z).second;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        // z is the i-th largest root; store ascending on [0,1].
        rule.points[n - 1 - i] = 0.5 * (1.0 + z);
        rule.points[i] = 0.5 * (1.0 - z);
        rule.weights[n - 1 - i] = 0.5 * w;
        rule.weights[i] = 0.5 * w;
    }
    if (n % 2 == 1) {
        rule.points[n / 2] = 0.5;
    }
    return rule;
}

QuadratureRule composite(const QuadratureRule& base, int pieces) {
    if (pieces < 1) {
        throw InvalidParameter("composite: need at least one piece");
    }
    QuadratureRule out;
    out.points.reserve(base.size() * pieces);
    out.weights.reserve(base.size() * pieces);
    const double h = 1.0 / pieces;
    for (int j = 0; j < pieces; ++j) {
        for (std::size_t q = 0; q < base.size(); ++q) {
            out.points.push_back((j + base.points[q]) * h);
            out.weights.push_back(base.weights[q] * h);
        }
    }
    return out;
}

QuadratureRule graded_toward_right(const QuadratureRule& base, int pieces) {
    if (pieces < 1) {
        throw InvalidParameter("graded_toward_right: need at least one piece");
    }
    QuadratureRule out;
    double a = 0.0;
    double len = 0.5;
    for (int j = 0; j < pieces; ++j) {
        const bool last = j + 1 == pieces;
        const double h = last ? 1.0 - a : len;
        for (std::size_t q = 0; q < base.size(); ++q) {
            out.points.push_back(a + base.points[q] * h);
            out.weights.push_back(base.weights[q] * h);
        }
        a += h;
        len *= 0.5;
    }
    return out;
}

double shifted_legendre(int k, double xi) {
    if (k < 0) {
        throw InvalidParameter("shifted_legendre: negative degree");
    }
    const double z = 2.0 * xi - 1.0;
    double p0 = 1.0;
    if (k == 0) {
        return p0;
    }
    double p1 = z;
    for (int j = 1; j < k; ++j) {
        const double p2 = ((2.0 * j + 1.0) * z * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

LagrangeBasis::LagrangeBasis(int degree, NodePlacement placement) : degree_(degree), placement_(placement) {
    if (degree < 1 || degree > 16) {
        throw InvalidParameter("LagrangeBasis: degree must be in [1, 16], got " + std::to_string(degree));
    }
    nodes_.resize(degree + 1);
    nodes_.front() = 0.0;
    nodes_.back() = 1.0;
    if (placement == NodePlacement::equispaced) {
        for (int k = 1; k < degree; ++k) {
            nodes_[k] = static_cast<double>(k) / degree;
        }
    } else {
        const auto interior = lobatto_interior(degree);
        for (int k = 1; k < degree; ++k) {
            nodes_[k] = 0.5 * (1.0 + interior[k - 1]);
        }
    }
    denominators_.resize(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        double d = 1.0;
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            if (j != k) {
                d *= nodes_[k] - nodes_[j];
            }
        }
        denominators_[k] = d;
    }
}

double LagrangeBasis::eval(std::size_t k, double xi) const {
    double v = 1.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        if (j != k) {
            v *= xi - nodes_[j];
        }
    }
    return v / denominators_[k];
}

double LagrangeBasis::deriv(std::size_t k, double xi) const {
    double sum = 0.0;
    for (std::size_t m = 0; m < nodes_.size(); ++m) {
        if (m == k) {
            continue;
        }
        double prod = 1.0;
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            if (j != k && j != m) {
                prod *= xi - nodes_[j];
            }
        }
        sum += prod;
    }
    return sum / denominators_[k];
}

BasisTable tabulate(const LagrangeBasis& basis, std::span<const double> points) {
    BasisTable table;
    table.num_points = points.size();
    table.num_functions = basis.size();
    table.values.resize(table.num_points * table.num_functions);
    table.derivs.resize(table.num_points * table.num_functions);
    for (std::size_t q = 0; q < points.size(); ++q) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            table.values[q * table.num_functions + k] = basis.eval(k, points[q]);
            table.derivs[q * table.num_functions + k] = basis.deriv(k, points[q]);
        }
    }
    return table;
}

} // namespace stwave
