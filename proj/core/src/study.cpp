#include "stwave/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "stwave/exceptions.hpp"

namespace stwave {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt_eoc(const std::optional<double>& v) { return v ? fmt("%.1f", *v) : "-"; }

const char* solution_name(SolutionId id) { return id == SolutionId::u1 ? "u1" : "u2"; }

const char* placement_name(NodePlacement p) {
    return p == NodePlacement::gauss_lobatto ? "gauss_lobatto" : "equispaced";
}

std::optional<double> rate(double previous, double current) {
    if (previous > 0.0 && current > 0.0 && std::isfinite(previous) && std::isfinite(current)) {
        return eoc(std::vector<double>{previous, current}).front();
    }
    return std::nullopt;
}

} // namespace

void validate(const StudyConfig& c) {
    if (c.degree < 1 || c.degree > 8) {
        throw InvalidParameter("degree must be in [1, 8], got " + std::to_string(c.degree));
    }
    if (c.levels < 1 || c.levels > 24) {
        throw InvalidParameter("levels must be in [1, 24], got " + std::to_string(c.levels));
    }
    if (c.quad_boost < 0 || c.quad_boost > 32) {
        throw InvalidParameter("quad-boost must be in [0, 32], got " + std::to_string(c.quad_boost));
    }
    if (!(c.T > 0.0) || !std::isfinite(c.T)) {
        throw InvalidParameter("T must be positive and finite");
    }
    if (c.fixed_points < 1 || c.fixed_points > 32) {
        throw InvalidParameter("quad-points must be in [1, 32], got " + std::to_string(c.fixed_points));
    }
    if (!(c.memory_ceiling_bytes > 0.0)) {
        throw InvalidParameter("memory ceiling must be positive");
    }
}

std::size_t dof_at_level(int p, int level) {
    const std::size_t pp = static_cast<std::size_t>(p);
    const std::size_t nx = std::size_t{2} << level;
    const std::size_t nt = std::size_t{3} << level;
    return (pp * nx - 1) * pp * nt;
}

namespace {

QuadratureSettings study_quadrature(const StudyConfig& c, Axis axis, double length, int extra) {
    if (c.quadrature == QuadratureScheme::fixed) {
        return {c.fixed_points + c.quad_boost, 0.0, false, 30};
    }
    const bool graded = axis == Axis::time && c.solution == SolutionId::u2;
    return {c.degree + extra + c.quad_boost, length / 64.0, graded, 30};
}

} // namespace

QuadratureSettings load_quadrature(const StudyConfig& config, Axis axis, double length) {
    return study_quadrature(config, axis, length, 4);
}

QuadratureSettings error_quadrature(const StudyConfig& config, Axis axis, double length) {
    return study_quadrature(config, axis, length, 3);
}

ExactSolution exact_solution(const StudyConfig& config) {
    return config.solution == SolutionId::u1 ? make_u1(config.T) : make_u2(config.T);
}

LevelSolution solve_level(const StudyConfig& config, int level, const SpaceTimeFunction& f,
                          const QuadraturePlan* plan_x, const TemporalQuadraturePlan* plan_t) {
    validate(config);
    Mesh1D mesh_x = refine_uniform(starting_spatial_mesh(), level);
    Mesh1D mesh_t = refine_uniform(starting_temporal_mesh(config.T), level);
    LagrangeBasis basis(config.degree, config.node_placement);
    KroneckerSystem system{assemble_temporal(mesh_t, basis, config.stabilised), assemble_spatial(mesh_x, basis)};

    const QuadraturePlan default_x(mesh_x, load_quadrature(config, Axis::space, mesh_x.length()));
    const QuadraturePlan default_t(mesh_t, load_quadrature(config, Axis::time, config.T));
    auto rhs = assemble_load(f, mesh_x, mesh_t, basis, plan_x ? *plan_x : default_x, plan_t ? *plan_t : default_t);

    SolveOptions options;
    options.kind = config.solver;
    auto result = solve(system, rhs, options);
    return {std::move(mesh_x), std::move(mesh_t), std::move(basis), std::move(system), std::move(rhs),
            std::move(result)};
}

StudyReport run_study(const StudyConfig& config) {
    validate(config);
    StudyReport report;
    report.config = config;

    const int deepest = config.levels - 1;
    const std::size_t mx = static_cast<std::size_t>(config.degree) * (std::size_t{2} << deepest) - 1;
    const std::size_t nt = static_cast<std::size_t>(config.degree) * (std::size_t{3} << deepest);
    const double estimate = static_cast<double>(estimate_solver_bytes(mx, nt, config.degree, config.solver));
    if (estimate > config.memory_ceiling_bytes) {
        report.failure = "memory ceiling: level " + std::to_string(deepest) + " needs an estimated " +
                         fmt("%.3g", estimate / 1e9) + " GB, ceiling is " +
                         fmt("%.3g", config.memory_ceiling_bytes / 1e9) + " GB";
        return report;
    }

    const auto exact = exact_solution(config);
    for (int level = 0; level < config.levels; ++level) {
        const auto start = std::chrono::steady_clock::now();
        StudyRow row;
        row.level = level;
        row.dof = dof_at_level(config.degree, level);
        try {
            const auto sol = solve_level(config, level, exact.f);
            if (!sol.result.residual_ok) {
                report.warnings.push_back("level " + std::to_string(level) + ": " + sol.result.warning);
            }
            const auto sx = mesh_stats(sol.mesh_x);
            const auto st = mesh_stats(sol.mesh_t);
            row.hx_max = sx.h_max;
            row.hx_min = sx.h_min;
            row.ht_max = st.h_max;
            row.ht_min = st.h_min;
            row.relative_residual = sol.result.relative_residual;

            const QuadraturePlan ex(sol.mesh_x, error_quadrature(config, Axis::space, sol.mesh_x.length()));
            const QuadraturePlan et(sol.mesh_t, error_quadrature(config, Axis::time, config.T));
            const DiscreteSolution uh(sol.result.solution, sol.mesh_x, sol.mesh_t, sol.basis);
            const auto err = error_norms(uh, exact, ex, et);
            row.l2_error = err.l2;
            row.h1_error = err.h1_semi;
        } catch (const SolverFailure& e) {
            report.failure = "level " + std::to_string(level) + ": solver failure: " + e.what();
            report.failure_is_solver = true;
            break;
        } catch (const EvaluationError& e) {
            report.failure = "level " + std::to_string(level) + ": " + e.what();
            break;
        }
        if (!report.rows.empty()) {
            row.l2_eoc = rate(report.rows.back().l2_error, row.l2_error);
            row.h1_eoc = rate(report.rows.back().h1_error, row.h1_error);
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.rows.push_back(row);
    }
    return report;
}

CflDemoReport run_cfl_demo(int p, int levels, double T) {
    StudyConfig config;
    config.degree = p;
    config.solution = SolutionId::u1;
    config.levels = levels;
    config.T = T;

    CflDemoReport demo;
    demo.experimental = p != 1;
    config.stabilised = true;
    demo.stabilised = run_study(config);
    config.stabilised = false;
    demo.unstabilised = run_study(config);

    const auto& un = demo.unstabilised;
    demo.unstabilised_blew_up = un.failure.has_value();
    for (std::size_t k = 0; k < un.rows.size(); ++k) {
        const auto& row = un.rows[k];
        if (!std::isfinite(row.l2_error) || !std::isfinite(row.h1_error)) {
            demo.unstabilised_blew_up = true;
        }
        if (row.level >= 3) {
            if (row.l2_eoc) {
                demo.max_unstabilised_deviation = std::max(demo.max_unstabilised_deviation, std::abs(*row.l2_eoc - 2.0));
            }
            if (k > 0 && row.l2_error > un.rows[k - 1].l2_error) {
                demo.unstabilised_blew_up = true;
            }
        }
    }
    demo.unstabilised_failed_rate = demo.unstabilised_blew_up || demo.max_unstabilised_deviation > 0.5;

    const auto& st = demo.stabilised;
    demo.stabilised_rate_ok = !st.failure && !st.rows.empty() && st.rows.back().l2_eoc &&
                              std::abs(*st.rows.back().l2_eoc - (p + 1.0)) <= 0.15;
    return demo;
}

void write_csv(const StudyReport& report, std::ostream& os) {
    os << "level,dof,hx_max,hx_min,ht_max,ht_min,l2_error,l2_eoc,h1_error,h1_eoc\n";
    for (const auto& r : report.rows) {
        os << r.level << ',' << r.dof << ',' << fmt("%.10g", r.hx_max) << ',' << fmt("%.10g", r.hx_min) << ','
           << fmt("%.10g", r.ht_max) << ',' << fmt("%.10g", r.ht_min) << ',' << fmt("%.5e", r.l2_error) << ','
           << fmt_eoc(r.l2_eoc) << ',' << fmt("%.5e", r.h1_error) << ',' << fmt_eoc(r.h1_eoc) << '\n';
    }
    for (const auto& w : report.warnings) {
        os << "# warning: " << w << '\n';
    }
    if (report.failure) {
        os << "# failure: " << *report.failure << '\n';
    }
}

void write_markdown(const StudyReport& report, std::ostream& os) {
    const auto& c = report.config;
    os << "p = " << c.degree << ", solution " << solution_name(c.solution) << ", T = " << fmt("%g", c.T)
       << (c.stabilised ? ", stabilised" : ", unstabilised") << ", nodes " << placement_name(c.node_placement)
       << ", quad-boost " << c.quad_boost;
    if (c.quadrature == QuadratureScheme::fixed) {
        os << ", fixed " << c.fixed_points << "-point quadrature";
    }
    os << "\n\n";
    os << "| dof | h_x,max | h_x,min | h_t,max | h_t,min | L2 error | eoc | H1 error | eoc |\n";
    os << "|---:|:---:|:---:|:---:|:---:|:---:|:---:|:---:|:---:|\n";
    for (const auto& r : report.rows) {
        os << "| " << r.dof << " | " << fmt("%.4f", r.hx_max) << " | " << fmt("%.4f", r.hx_min) << " | "
           << fmt("%.4f", r.ht_max) << " | " << fmt("%.4f", r.ht_min) << " | " << fmt("%.1e", r.l2_error) << " | "
           << fmt_eoc(r.l2_eoc) << " | " << fmt("%.1e", r.h1_error) << " | " << fmt_eoc(r.h1_eoc) << " |\n";
    }
    os << "\n| level | relative residual |\n|---:|---:|\n";
    for (const auto& r : report.rows) {
        os << "| " << r.level << " | " << fmt("%.2e", r.relative_residual) << " |\n";
    }
    for (const auto& w : report.warnings) {
        os << "\nwarning: " << w << '\n';
    }
    if (report.failure) {
        os << "\nfailure: " << *report.failure << '\n';
    }
}

void write_cfl_demo(const CflDemoReport& demo, std::ostream& os) {
    const auto& s = demo.stabilised.rows;
    const auto& u = demo.unstabilised.rows;
    os << "level,dof,stab_l2_error,stab_l2_eoc,stab_h1_error,stab_h1_eoc,"
          "unstab_l2_error,unstab_l2_eoc,unstab_h1_error,unstab_h1_eoc\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        os << s[k].level << ',' << s[k].dof << ',' << fmt("%.5e", s[k].l2_error) << ',' << fmt_eoc(s[k].l2_eoc) << ','
           << fmt("%.5e", s[k].h1_error) << ',' << fmt_eoc(s[k].h1_eoc);
        if (k < u.size()) {
            os << ',' << fmt("%.5e", u[k].l2_error) << ',' << fmt_eoc(u[k].l2_eoc) << ','
               << fmt("%.5e", u[k].h1_error) << ',' << fmt_eoc(u[k].h1_eoc);
        } else {
            os << ",-,-,-,-";
        }
        os << '\n';
    }
    if (demo.unstabilised.failure) {
        os << "# unstabilised failure: " << *demo.unstabilised.failure << '\n';
    }
    os << "# unstabilised max |eoc - 2| at levels >= 3: " << fmt("%.2f", demo.max_unstabilised_deviation) << '\n';
    os << "# unstabilised blow-up: " << (demo.unstabilised_blew_up ? "yes" : "no") << '\n';
    os << "# unstabilised fails rate criterion: " << (demo.unstabilised_failed_rate ? "yes" : "no") << '\n';
    os << "# stabilised reaches optimal L2 rate: " << (demo.stabilised_rate_ok ? "yes" : "no") << '\n';
    if (demo.experimental) {
        os << "# note: p != 1 is experimental\n";
    }
}

} // namespace stwave
