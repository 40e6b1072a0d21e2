#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imcf/geometry.hpp"

namespace imcf {

/// Radial elliptic regularization of the level-set equation on [s0, sL]:
///   div(grad u / sqrt(|grad u|^2 + eps^2)) - sqrt(|grad u|^2 + eps^2) = 0,
///   u(s0) = 0, u(sL) = L - 2.
struct RegularizedProblem {
  RadialMetric metric;
  double s0 = 0.0;
  double L = 0.0;
  double sL = 0.0;
  double epsilon = 0.0;
  int n = 0;  ///< grid points, boundaries included
};

/// Outer level giving eps * R(sL) ~ 1, past which the regularized problem
/// stops admitting solutions that track the flow.
double auto_level(const RadialMetric& metric, double s0, double epsilon);

/// Validates the parameters and places sL where R(sL) = R(s0) e^(L/2),
/// capped by the metric domain.
RegularizedProblem make_problem(const RadialMetric& metric, double s0, double L, double epsilon,
                                int n);

std::vector<double> grid_coordinates(const RegularizedProblem& problem);

/// Conservative second-order discretization of E^eps u; zero at the boundaries.
std::vector<double> assemble_residual(const RegularizedProblem& problem,
                                      const std::vector<double>& u);

struct SolverResult {
  std::vector<double> s;
  std::vector<double> u;
  double residual_norm = 0.0;  ///< max norm of the discrete operator
  int newton_iterations = 0;
  bool converged = false;
  std::string message;
};

struct NewtonOptions {
  int max_iterations = 200;
  double rel_tol = 1e-10;
};

/// min(2 log(R/R(s0)), L - 2): the log subsolution clamped to the outer data.
std::vector<double> default_initial_guess(const RegularizedProblem& problem);

SolverResult solve_newton(const RegularizedProblem& problem,
                          const std::optional<std::vector<double>>& initial = std::nullopt,
                          const NewtonOptions& options = {});

/// Converged iff residual_norm <= rel_tol * (1 + max |u|).
bool residual_within_tolerance(const SolverResult& result, double rel_tol = 1e-10);

struct BarrierReport {
  bool sufficient_range = true;
  bool subsolution = false;  ///< E^eps[c log(R/R0)] >= 0 on the fit range
  bool dominated = false;    ///< u >= c log(R/R0) - c2 on the fit range
  bool holds = false;
  double c1_fit = 0.0;
  double c_barrier = 0.0;
  double c2 = 0.0;
  double min_operator = 0.0;
  double worst_violation = 0.0;
  double level_lo = 0.0;
  double level_hi = 0.0;
  int points = 0;
  std::string note;
};

BarrierReport subsolution_barrier(const RegularizedProblem& problem, const SolverResult& result);

struct LevelSetPoint {
  double s = 0.0;
  bool monotone = true;  ///< false: u is not monotone and the first crossing is used
};

LevelSetPoint level_set_extract(const SolverResult& result, double t);

struct ScheduleStage {
  double epsilon = 0.0;
  double L = 0.0;
  int n = 0;
};

struct StageRecord {
  ScheduleStage stage;
  double sL = 0.0;
  int newton_iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
  bool warm_started = false;
  double core_error = 0.0;
  double successive_distance = -1.0;  ///< negative for the first stage
  int core_points = 0;
};

struct ConvergenceReport {
  double core_level = 0.0;
  std::vector<StageRecord> stages;
  bool error_monotone = true;
  bool distance_monotone = true;
  bool passed = false;
  std::vector<SolverResult> solutions;
};

/// Solves each stage, warm-starting from the previous one, and measures the
/// sup-error to the exact weak-flow level function on {t(s) <= core_level}.
/// A negative core_level selects (L_1 - 2)/2.
ConvergenceReport convergence_study(const RadialMetric& metric, double s0,
                                    const std::vector<ScheduleStage>& schedule,
                                    double core_level = -1.0);

/// Sup-error of a solution to the exact flow level function on the core.
std::pair<double, int> core_error(const RadialMetric& metric, double s0, const SolverResult& result,
                                  double core_level);

}  // namespace imcf
