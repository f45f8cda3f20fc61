#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace stwave {

/// Manufactured solution of u_tt - u_xx = f on (0,L) x (0,T) with homogeneous Dirichlet
/// and initial data. All fields are closed forms; f = u_tt - u_xx.
struct ExactSolution {
    using Field = std::function<double(double x, double t)>;

    std::string label;
    std::string regularity_note;
    double L = 1.0;
    double T = 10.0;
    /// The time derivatives blow up (integrably) as t -> T; quadrature must stay interior
    /// and should be graded toward T.
    bool singular_at_final_time = false;

    Field u;
    Field du_dt;
    Field du_dx;
    Field f;
};

/// u1 = t^2 sin(10 pi x) sin(t x) on (0,1) x (0,T).
ExactSolution make_u1(double T = 10.0);

/// u2 = t^2 (T-t)^{9/5} sqrt(t + x^2 + 1) sin(pi x) on (0,1) x (0,T).
/// Time derivatives and f throw InvalidParameter for t >= T.
ExactSolution make_u2(double T = 10.0);

/// u = 0, f = 0.
ExactSolution make_zero_solution(double T = 10.0);

struct DerivativeReport {
    int samples = 0;
    double max_error_du_dt = 0.0;
    double max_error_du_dx = 0.0;
    double max_error_f = 0.0;
    /// Largest error scaled by the acceptance bound, (|d| / (abs_tol + rel_tol |value|)).
    double worst_ratio = 0.0;
    bool passed = true;
};

/// Compares du_dt, du_dx and f with extrapolated central differences of u at random
/// interior points. For solutions singular at T the samples keep t <= 0.95 T.
DerivativeReport verify_derivatives(const ExactSolution& sol, int samples, std::uint64_t seed = 20210401,
                                    double abs_tol = 1e-6, double rel_tol = 1e-6);

} // namespace stwave
