#include "stwave/solutions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "stwave/exceptions.hpp"

namespace stwave {

namespace {

constexpr double pi = std::numbers::pi;

// Extrapolated second central difference (Ridders' scheme on an h^2 error series).
template <class F>
double second_derivative(F&& g, double x, double h0) {
    constexpr int ntab = 10;
    constexpr double con = 1.4;
    constexpr double con2 = con * con;
    constexpr double safe = 2.0;
    std::array<std::array<double, ntab>, ntab> a{};
    double h = h0;
    const double g0 = g(x);
    auto d2 = [&](double hh) { return (g(x + hh) - 2.0 * g0 + g(x - hh)) / (hh * hh); };
    a[0][0] = d2(h);
    double err = std::numeric_limits<double>::max();
    double ans = a[0][0];
    for (int i = 1; i < ntab; ++i) {
        h /= con;
        a[0][i] = d2(h);
        double fac = con2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= con2;
            const double errt = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
            if (errt <= err) {
                err = errt;
                ans = a[j][i];
            }
        }
        if (std::abs(a[i][i] - a[i - 1][i - 1]) >= safe * err) {
            break;
        }
    }
    return ans;
}

// Central difference with step h, Richardson-extrapolated once.
template <class F>
double first_derivative(F&& g, double x, double h) {
    auto d = [&](double hh) { return (g(x + hh) - g(x - hh)) / (2.0 * hh); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

} // namespace

ExactSolution make_u1(double T) {
    if (!(T > 0.0)) {
        throw InvalidParameter("make_u1: T must be positive");
    }
    ExactSolution s;
    s.label = "u1";
    s.regularity_note = "smooth (C^infinity)";
    s.T = T;
    s.u = [](double x, double t) { return t * t * std::sin(10.0 * pi * x) * std::sin(t * x); };
    s.du_dt = [](double x, double t) {
        const double sx = std::sin(10.0 * pi * x);
        return sx * (2.0 * t * std::sin(t * x) + t * t * x * std::cos(t * x));
    };
    s.du_dx = [](double x, double t) {
        return t * t * (10.0 * pi * std::cos(10.0 * pi * x) * std::sin(t * x) + std::sin(10.0 * pi * x) * t * std::cos(t * x));
    };
    s.f = [](double x, double t) {
        const double sx = std::sin(10.0 * pi * x);
        const double cx = std::cos(10.0 * pi * x);
        const double s = std::sin(t * x);
        const double c = std::cos(t * x);
        const double utt = sx * (2.0 * s + 4.0 * t * x * c - t * t * x * x * s);
        const double uxx = t * t * (-100.0 * pi * pi * sx * s + 20.0 * pi * t * cx * c - t * t * sx * s);
        return utt - uxx;
    };
    return s;
}

ExactSolution make_u2(double T) {
    if (!(T > 0.0)) {
        throw InvalidParameter("make_u2: T must be positive");
    }
    ExactSolution s;
    s.label = "u2";
    s.regularity_note = "u2 in H^{23/10-eps}(Q): (T-t)^{9/5} limits the temporal regularity";
    s.T = T;
    s.singular_at_final_time = true;

    auto guard = [T](double t, const char* what) {
        if (!(t < T)) {
            throw InvalidParameter(std::string("u2: ") + what + " is only defined for t < T, got t = " +
                                   std::to_string(t));
        }
    };
    s.u = [T](double x, double t) {
        if (t > T) {
            throw InvalidParameter("u2: evaluated beyond T");
        }
        return t * t * std::pow(T - t, 1.8) * std::sqrt(t + x * x + 1.0) * std::sin(pi * x);
    };
    // u = g(t) r(x,t) sin(pi x) with g = t^2 (T-t)^{9/5}, r = sqrt(t + x^2 + 1).
    s.du_dt = [T, guard](double x, double t) {
        guard(t, "du_dt");
        const double d = T - t;
        const double g = t * t * std::pow(d, 1.8);
        const double g1 = 2.0 * t * std::pow(d, 1.8) - 1.8 * t * t * std::pow(d, 0.8);
        const double r = std::sqrt(t + x * x + 1.0);
        return std::sin(pi * x) * (g1 * r + g / (2.0 * r));
    };
    s.du_dx = [T](double x, double t) {
        if (t > T) {
            throw InvalidParameter("u2: evaluated beyond T");
        }
        const double g = t * t * std::pow(T - t, 1.8);
        const double r = std::sqrt(t + x * x + 1.0);
        return g * (x / r * std::sin(pi * x) + r * pi * std::cos(pi * x));
    };
    s.f = [T, guard](double x, double t) {
        guard(t, "f");
        const double d = T - t;
        const double g = t * t * std::pow(d, 1.8);
        const double g1 = 2.0 * t * std::pow(d, 1.8) - 1.8 * t * t * std::pow(d, 0.8);
        const double g2 = 2.0 * std::pow(d, 1.8) - 7.2 * t * std::pow(d, 0.8) + 1.44 * t * t * std::pow(d, -0.2);
        const double r = std::sqrt(t + x * x + 1.0);
        const double r3 = r * r * r;
        const double sn = std::sin(pi * x);
        const double cs = std::cos(pi * x);
        // r_t = 1/(2r), r_tt = -1/(4 r^3), r_x = x/r, r_xx = (t+1)/r^3
        const double utt = sn * (g2 * r + g1 / r - g / (4.0 * r3));
        const double uxx = g * ((t + 1.0) / r3 * sn + 2.0 * x / r * pi * cs - r * pi * pi * sn);
        return utt - uxx;
    };
    return s;
}

ExactSolution make_zero_solution(double T) {
    ExactSolution s;
    s.label = "zero";
    s.regularity_note = "smooth";
    s.T = T;
    auto zero = [](double, double) { return 0.0; };
    s.u = zero;
    s.du_dt = zero;
    s.du_dx = zero;
    s.f = zero;
    return s;
}

DerivativeReport verify_derivatives(const ExactSolution& sol, int samples, std::uint64_t seed, double abs_tol,
                                    double rel_tol) {
    if (samples < 1) {
        throw InvalidParameter("verify_derivatives: need at least one sample");
    }
    std::mt19937_64 rng(seed);
    const double t_hi = sol.singular_at_final_time ? 0.95 * sol.T : 0.99 * sol.T;
    std::uniform_real_distribution<double> dx(0.01 * sol.L, 0.99 * sol.L);
    std::uniform_real_distribution<double> dt(0.01 * sol.T, t_hi);

    constexpr double first_step = 1e-5;
    const double second_step_x = 0.01 * sol.L;
    const double second_step_t = 0.01 * sol.T;

    DerivativeReport rep;
    rep.samples = samples;
    auto check = [&](double exact, double approx, double& slot) {
        const double d = std::abs(exact - approx);
        slot = std::max(slot, d);
        const double ratio = d / (abs_tol + rel_tol * std::abs(exact));
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        if (!(ratio <= 1.0)) {
            rep.passed = false;
        }
    };
    for (int k = 0; k < samples; ++k) {
        const double x = dx(rng);
        const double t = dt(rng);
        auto in_t = [&](double tt) { return sol.u(x, tt); };
        auto in_x = [&](double xx) { return sol.u(xx, t); };
        check(sol.du_dt(x, t), first_derivative(in_t, t, first_step), rep.max_error_du_dt);
        check(sol.du_dx(x, t), first_derivative(in_x, x, first_step), rep.max_error_du_dx);
        const double utt = second_derivative(in_t, t, second_step_t);
        const double uxx = second_derivative(in_x, x, second_step_x);
        check(sol.f(x, t), utt - uxx, rep.max_error_f);
    }
    return rep;
}

} // namespace stwave
