#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stwave/assembly.hpp"
#include "stwave/error_norms.hpp"
#include "stwave/linsystem.hpp"
#include "stwave/polybasis.hpp"

namespace stwave {

enum class SolutionId { u1, u2 };
enum class OutputFormat { csv, markdown };

/// resolved: p+4 (load) and p+3 (error) Gauss points on pieces of at most L/64 and T/64,
/// graded toward T for solutions singular there.
/// fixed: fixed_points Gauss points per element and direction, no splitting or grading.
enum class QuadratureScheme { resolved, fixed };
enum class Axis { space, time };

struct StudyConfig {
    int degree = 1;
    SolutionId solution = SolutionId::u1;
    int levels = 1;
    bool stabilised = true;
    NodePlacement node_placement = NodePlacement::gauss_lobatto;
    /// Extra Gauss points per direction for load and error quadrature.
    int quad_boost = 0;
    OutputFormat output = OutputFormat::csv;
    double T = 10.0;
    std::string out_path;
    SolverKind solver = SolverKind::time_marching;
    double memory_ceiling_bytes = 8e9;
    QuadratureScheme quadrature = QuadratureScheme::resolved;
    int fixed_points = 10;
};

/// Throws InvalidParameter on an invalid configuration.
void validate(const StudyConfig& config);

/// (p N_x(r) - 1) p N_t(r) with N_x(r) = 2^{r+1}, N_t(r) = 3 * 2^r.
std::size_t dof_at_level(int p, int level);

/// Quadrature for the load vector (p+4 points) and the error norms (p+3 points), plus
/// the boost. The resolved scheme caps pieces at length/64 and grades the final time
/// element for u2. The fixed scheme uses fixed_points + boost points per element.
QuadratureSettings load_quadrature(const StudyConfig& config, Axis axis, double length);
QuadratureSettings error_quadrature(const StudyConfig& config, Axis axis, double length);

struct StudyRow {
    int level = 0;
    std::size_t dof = 0;
    double hx_max = 0.0;
    double hx_min = 0.0;
    double ht_max = 0.0;
    double ht_min = 0.0;
    double l2_error = 0.0;
    std::optional<double> l2_eoc;
    double h1_error = 0.0;
    std::optional<double> h1_eoc;
    double relative_residual = 0.0;
    double seconds = 0.0;
};

struct StudyReport {
    StudyConfig config;
    std::vector<StudyRow> rows;
    /// Set when a level failed; rows hold the levels completed before it.
    std::optional<std::string> failure;
    bool failure_is_solver = false;
    std::vector<std::string> warnings;
};

/// Per-level solver output, exposed for the acceptance and property suites.
struct LevelSolution {
    Mesh1D mesh_x;
    Mesh1D mesh_t;
    LagrangeBasis basis;
    KroneckerSystem system;
    std::vector<double> rhs;
    SolveResult result;
};

/// Assembles and solves level `level` of the study for a given right-hand side.
LevelSolution solve_level(const StudyConfig& config, int level, const SpaceTimeFunction& f,
                          const QuadraturePlan* plan_x = nullptr, const TemporalQuadraturePlan* plan_t = nullptr);

ExactSolution exact_solution(const StudyConfig& config);

/// Runs every level. Solver failures and memory-ceiling refusals end the study early
/// and are recorded in report.failure; the memory check happens before any allocation.
StudyReport run_study(const StudyConfig& config);

/// Stabilised and unstabilised u1 studies on the same meshes.
struct CflDemoReport {
    StudyReport stabilised;
    StudyReport unstabilised;
    /// Largest |eoc - 2| of the unstabilised L2 column over levels >= 3.
    double max_unstabilised_deviation = 0.0;
    bool unstabilised_blew_up = false;
    bool unstabilised_failed_rate = false;
    bool stabilised_rate_ok = false;
    bool experimental = false;
};

CflDemoReport run_cfl_demo(int p, int levels, double T = 10.0);

void write_csv(const StudyReport& report, std::ostream& os);
void write_markdown(const StudyReport& report, std::ostream& os);
void write_cfl_demo(const CflDemoReport& demo, std::ostream& os);

} // namespace stwave
