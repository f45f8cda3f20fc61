// Convergence studies for the stabilised space-time Galerkin wave solver.
//
//   stwave --degree 2 --solution u1 --levels 8 --out table.csv
//   stwave --demo-cfl --degree 1 --levels 8

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "stwave/exceptions.hpp"
#include "stwave/study.hpp"

namespace {

enum ExitCode { ok = 0, invalid_config = 2, solver_failure = 3, memory_refusal = 4 };

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no") {
        return false;
    }
    throw stwave::InvalidParameter("expected true or false, got '" + s + "'");
}

void emit(const stwave::StudyConfig& config, const std::function<void(std::ostream&)>& writer) {
    if (config.out_path.empty() || config.out_path == "-") {
        writer(std::cout);
        return;
    }
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) {
        throw stwave::InvalidParameter("cannot open output file " + config.out_path);
    }
    writer(out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stabilised higher-order space-time Galerkin solver for the 1D wave equation"};

    stwave::StudyConfig config;
    std::string stabilised = "true";
    double memory_gb = 8.0;
    bool demo_cfl = false;

    const std::map<std::string, stwave::SolutionId> solutions{{"u1", stwave::SolutionId::u1},
                                                              {"u2", stwave::SolutionId::u2}};
    const std::map<std::string, stwave::NodePlacement> nodes{{"gauss_lobatto", stwave::NodePlacement::gauss_lobatto},
                                                             {"equispaced", stwave::NodePlacement::equispaced}};
    const std::map<std::string, stwave::OutputFormat> formats{{"csv", stwave::OutputFormat::csv},
                                                              {"markdown", stwave::OutputFormat::markdown}};
    const std::map<std::string, stwave::QuadratureScheme> schemes{{"resolved", stwave::QuadratureScheme::resolved},
                                                                  {"fixed", stwave::QuadratureScheme::fixed}};
    const std::map<std::string, stwave::SolverKind> solvers{{"marching", stwave::SolverKind::time_marching},
                                                            {"banded", stwave::SolverKind::banded}};

    app.add_option("--degree", config.degree, "Polynomial degree p in [1, 8]");
    app.add_option("--solution", config.solution, "Exact solution")->transform(CLI::CheckedTransformer(solutions));
    app.add_option("--levels", config.levels, "Number of refinement levels (level 0 is the start mesh)");
    app.add_option("--stabilised", stabilised, "Use the Q^{p-1} stabilised temporal mass (true|false)");
    app.add_option("--nodes", config.node_placement, "Intra-element node placement")
        ->transform(CLI::CheckedTransformer(nodes));
    app.add_option("--quad-boost", config.quad_boost, "Extra Gauss points per direction for load and errors");
    app.add_option("--quadrature", config.quadrature, "Load and error quadrature scheme")
        ->transform(CLI::CheckedTransformer(schemes));
    app.add_option("--quad-points", config.fixed_points, "Gauss points per element for --quadrature fixed");
    app.add_option("--format", config.output, "Output format")->transform(CLI::CheckedTransformer(formats));
    app.add_option("--out", config.out_path, "Output file (stdout when omitted)");
    app.add_option("--T", config.T, "Terminal time");
    app.add_option("--solver", config.solver, "Direct solver")->transform(CLI::CheckedTransformer(solvers));
    app.add_option("--memory-limit-gb", memory_gb, "Refuse studies whose estimated solver memory exceeds this");
    app.add_flag("--demo-cfl", demo_cfl, "Compare stabilised and unstabilised runs on CFL-violating meshes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : invalid_config;
    }

    try {
        config.stabilised = parse_bool(stabilised);
        config.memory_ceiling_bytes = memory_gb * 1e9;
        stwave::validate(config);

        if (demo_cfl) {
            const auto demo = stwave::run_cfl_demo(config.degree, config.levels, config.T);
            emit(config, [&](std::ostream& os) { stwave::write_cfl_demo(demo, os); });
            if (demo.stabilised.failure && !demo.stabilised.failure_is_solver) {
                std::cerr << "stwave: " << *demo.stabilised.failure << '\n';
                return memory_refusal;
            }
            return demo.stabilised.failure_is_solver ? solver_failure : ok;
        }

        const auto report = stwave::run_study(config);
        emit(config, [&](std::ostream& os) {
            if (config.output == stwave::OutputFormat::csv) {
                stwave::write_csv(report, os);
            } else {
                stwave::write_markdown(report, os);
            }
        });
        for (const auto& row : report.rows) {
            std::cerr << "level " << row.level << ": dof " << row.dof << ", residual " << row.relative_residual
                      << ", " << row.seconds << " s\n";
        }
        for (const auto& w : report.warnings) {
            std::cerr << "stwave: warning: " << w << '\n';
        }
        if (report.failure) {
            std::cerr << "stwave: " << *report.failure << '\n';
            if (report.rows.empty() && !report.failure_is_solver && report.failure->rfind("memory ceiling", 0) == 0) {
                return memory_refusal;
            }
            if (report.failure_is_solver && config.stabilised) {
                return solver_failure;
            }
        }
        return ok;
    } catch (const stwave::InvalidParameter& e) {
        std::cerr << "stwave: invalid configuration: " << e.what() << '\n';
        return invalid_config;
    } catch (const stwave::Error& e) {
        std::cerr << "stwave: " << e.what() << '\n';
        return solver_failure;
    }
}
