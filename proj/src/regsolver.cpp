#include "imcf/regsolver.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "imcf/flow.hpp"
#include "imcf/interpolation.hpp"

namespace imcf {

namespace {

struct GridData {
  double h = 0.0;
  std::vector<double> s, sqrtA, R2;   // nodes
  std::vector<double> sqrtA_half, R2_half;  // midpoints i + 1/2
};

GridData build_grid(const RegularizedProblem& p) {
  GridData g;
  const int n = p.n;
  g.h = (p.sL - p.s0) / (n - 1);
  g.s.resize(n);
  g.sqrtA.resize(n);
  g.R2.resize(n);
  g.sqrtA_half.resize(n - 1);
  g.R2_half.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    g.s[i] = i + 1 == n ? p.sL : p.s0 + i * g.h;
    const MetricPoint m = p.metric.at(g.s[i]);
    g.sqrtA[i] = 1.0 / std::sqrt(m.inv_A);
    g.R2[i] = m.R * m.R;
  }
  for (int i = 0; i + 1 < n; ++i) {
    const MetricPoint m = p.metric.at(0.5 * (g.s[i] + g.s[i + 1]));
    g.sqrtA_half[i] = 1.0 / std::sqrt(m.inv_A);
    g.R2_half[i] = m.R * m.R;
  }
  return g;
}

std::vector<double> residual(const GridData& g, double eps, const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<double> flux(n - 1), r(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double q = (u[i + 1] - u[i]) / (g.h * g.sqrtA_half[i]);
    flux[i] = g.R2_half[i] * q / std::sqrt(q * q + eps * eps);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double qc = (u[i + 1] - u[i - 1]) / (2.0 * g.h * g.sqrtA[i]);
    r[i] = (flux[i] - flux[i - 1]) / (g.h * g.sqrtA[i] * g.R2[i]) - std::sqrt(qc * qc + eps * eps);
  }
  return r;
}

double norm2(const std::vector<double>& r) {
  double sum = 0.0;
  for (double x : r) sum += x * x;
  return std::sqrt(sum);
}

double norm_inf(const std::vector<double>& r) {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

// Newton direction from the tridiagonal Jacobian (Thomas algorithm).
std::vector<double> newton_step(const GridData& g, double eps, const std::vector<double>& u,
                                const std::vector<double>& r) {
  const std::size_t n = u.size();
  std::vector<double> dflux(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double q = (u[i + 1] - u[i]) / (g.h * g.sqrtA_half[i]);
    const double w = std::sqrt(q * q + eps * eps);
    dflux[i] = g.R2_half[i] * eps * eps / (w * w * w) / (g.h * g.sqrtA_half[i]);
  }
  const std::size_t m = n - 2;
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    const double c = 1.0 / (g.h * g.sqrtA[i] * g.R2[i]);
    const double qc = (u[i + 1] - u[i - 1]) / (2.0 * g.h * g.sqrtA[i]);
    const double dg = qc / std::sqrt(qc * qc + eps * eps) / (2.0 * g.h * g.sqrtA[i]);
    lower[k] = c * dflux[i - 1] + dg;
    upper[k] = c * dflux[i] - dg;
    diag[k] = -c * (dflux[i - 1] + dflux[i]);
    rhs[k] = -r[i];
  }
  for (std::size_t k = 1; k < m; ++k) {
    if (diag[k - 1] == 0.0 || !std::isfinite(diag[k - 1]))
      throw NumericalError("singular linearization at grid point " + std::to_string(k));
    const double f = lower[k] / diag[k - 1];
    diag[k] -= f * upper[k - 1];
    rhs[k] -= f * rhs[k - 1];
  }
  if (diag[m - 1] == 0.0 || !std::isfinite(diag[m - 1]))
    throw NumericalError("singular linearization at grid point " + std::to_string(m));
  std::vector<double> delta(n, 0.0);
  delta[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) delta[k + 1] = (rhs[k] - upper[k] * delta[k + 2]) / diag[k];
  return delta;
}

double max_abs(const std::vector<double>& u) { return norm_inf(u); }

}  // namespace

double auto_level(const RadialMetric& metric, double s0, double epsilon) {
  return std::max(3.0, 2.0 * std::log(1.0 / (epsilon * metric.R(s0))));
}

RegularizedProblem make_problem(const RadialMetric& metric, double s0, double L, double epsilon,
                                int n) {
  if (!(epsilon > 0.0) || epsilon > 1.0) throw ConfigError("epsilon", "must lie in (0, 1]");
  if (n < 64) throw ConfigError("n", "grid needs at least 64 points");
  if (!(L > 2.0)) throw ConfigError("L", "outer level must exceed 2");
  if (!metric.in_interior(s0)) throw ConfigError("s0", "must lie inside the metric domain");
  const double R0 = metric.R(s0);
  if (!(R0 > 0.0)) throw ConfigError("s0", "start sphere is degenerate");

  const double target = R0 * std::exp(0.5 * L);
  double sL = metric.s_max();
  // First crossing of R = target on a geometric scan, refined by TOMS 748.
  constexpr int kScan = 4096;
  double prev = s0;
  for (int k = 1; k <= kScan; ++k) {
    const double s = s0 + (metric.s_max() - s0) * std::pow(1e-6, 1.0 - double(k) / kScan);
    if (metric.R(s) >= target) {
      auto f = [&](double x) { return metric.R(x) - target; };
      std::uintmax_t iters = 200;
      auto [a, b] = boost::math::tools::toms748_solve(
          f, prev, s, f(prev), f(s), boost::math::tools::eps_tolerance<double>(52), iters);
      sL = 0.5 * (a + b);
      break;
    }
    prev = s;
  }
  if (!(sL > s0)) throw ConfigError("L", "outer boundary does not lie beyond s0");
  return {metric, s0, L, sL, epsilon, n};
}

std::vector<double> grid_coordinates(const RegularizedProblem& problem) {
  std::vector<double> s(problem.n);
  const double h = (problem.sL - problem.s0) / (problem.n - 1);
  for (int i = 0; i < problem.n; ++i) s[i] = i + 1 == problem.n ? problem.sL : problem.s0 + i * h;
  return s;
}

std::vector<double> assemble_residual(const RegularizedProblem& problem,
                                      const std::vector<double>& u) {
  if (static_cast<int>(u.size()) != problem.n)
    throw DomainError("assemble_residual: grid function has the wrong length");
  return residual(build_grid(problem), problem.epsilon, u);
}

std::vector<double> default_initial_guess(const RegularizedProblem& problem) {
  const auto s = grid_coordinates(problem);
  const double R0 = problem.metric.R(problem.s0);
  std::vector<double> u(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    u[i] = std::min(2.0 * std::log(problem.metric.R(s[i]) / R0), problem.L - 2.0);
  u.front() = 0.0;
  u.back() = problem.L - 2.0;
  return u;
}

bool residual_within_tolerance(const SolverResult& result, double rel_tol) {
  return result.residual_norm <= rel_tol * (1.0 + max_abs(result.u));
}

SolverResult solve_newton(const RegularizedProblem& problem,
                          const std::optional<std::vector<double>>& initial,
                          const NewtonOptions& options) {
  const GridData g = build_grid(problem);
  const double eps = problem.epsilon;
  SolverResult out;
  out.s = g.s;
  std::vector<double> u = initial ? *initial : default_initial_guess(problem);
  if (static_cast<int>(u.size()) != problem.n)
    throw DomainError("solve_newton: initial guess has the wrong length");
  u.front() = 0.0;
  u.back() = problem.L - 2.0;

  std::vector<double> r = residual(g, eps, u);
  double merit = norm2(r);
  int it = 0;
  for (;; ++it) {
    const double scale = 1.0 + max_abs(u);
    if (norm_inf(r) <= options.rel_tol * scale) {
      out.converged = true;
      break;
    }
    if (it >= options.max_iterations) {
      out.message = "no convergence after " + std::to_string(it) + " Newton iterations";
      break;
    }
    const std::vector<double> delta = newton_step(g, eps, u, r);
    // Armijo backtracking on the l2 residual: halve down to 2^-30.
    double lambda = 1.0;
    bool accepted = false;
    std::vector<double> trial(u.size());
    while (lambda >= std::ldexp(1.0, -30)) {
      for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] + lambda * delta[i];
      std::vector<double> r_trial = residual(g, eps, trial);
      const double m_trial = norm2(r_trial);
      if (std::isfinite(m_trial) && m_trial < (1.0 - 1e-4 * lambda) * merit) {
        u.swap(trial);
        r.swap(r_trial);
        merit = m_trial;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      out.message = "line search stalled at iteration " + std::to_string(it);
      break;
    }
  }
  out.u = std::move(u);
  out.residual_norm = norm_inf(r);
  out.newton_iterations = it;
  return out;
}

// ---------------------------------------------------------------- barrier --

BarrierReport subsolution_barrier(const RegularizedProblem& problem, const SolverResult& result) {
  BarrierReport rep;
  if (problem.sL < 2.0 * problem.s0) {
    rep.sufficient_range = false;
    rep.note = "insufficient asymptotic range";
    return rep;
  }
  const GridData g = build_grid(problem);
  const double R0 = problem.metric.R(problem.s0);
  const std::size_t n = g.s.size();
  std::vector<double> ell(n);
  for (std::size_t i = 0; i < n; ++i) ell[i] = std::log(std::sqrt(g.R2[i]) / R0);

  // Fit range: flat-model levels in [(L-2)/4, (L-2)/2], below the plateau
  // that the outer data L-2 imposes near sL.
  rep.level_lo = 0.25 * (problem.L - 2.0);
  rep.level_hi = 0.5 * (problem.L - 2.0);
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (2.0 * ell[i] >= rep.level_lo && 2.0 * ell[i] <= rep.level_hi) idx.push_back(i);
  rep.points = static_cast<int>(idx.size());
  if (idx.size() < 8) {
    rep.sufficient_range = false;
    rep.note = "insufficient asymptotic range";
    return rep;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i : idx) {
    sx += ell[i];
    sy += result.u[i];
    sxx += ell[i] * ell[i];
    sxy += ell[i] * result.u[i];
  }
  const double k = static_cast<double>(idx.size());
  rep.c1_fit = (k * sxy - sx * sy) / (k * sxx - sx * sx);

  auto min_operator = [&](double c) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = c * ell[i];
    const auto r = residual(g, problem.epsilon, v);
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i : idx) lo = std::min(lo, r[i]);
    return lo;
  };

  // Largest slope c <= c1 whose log barrier is a discrete subsolution.
  double c = rep.c1_fit;
  if (min_operator(c) < 0.0) {
    double bad = c, good = -1.0;
    for (int j = 1; j < 64; ++j) {
      const double trial = rep.c1_fit * (1.0 - j / 64.0);
      if (min_operator(trial) >= 0.0) {
        good = trial;
        break;
      }
      bad = trial;
    }
    if (good < 0.0) {
      rep.note = "no subsolution slope found below the fitted slope";
      rep.c_barrier = 0.0;
      rep.min_operator = min_operator(rep.c1_fit);
      return rep;
    }
    for (int j = 0; j < 60; ++j) {
      const double mid = 0.5 * (good + bad);
      (min_operator(mid) >= 0.0 ? good : bad) = mid;
    }
    c = good;
  }
  rep.c_barrier = c;
  rep.min_operator = min_operator(c);
  rep.subsolution = rep.min_operator >= 0.0;

  // Boundary ordering at the ends of the range fixes c2; the comparison
  // principle then predicts u >= c log(R/R0) - c2 in between.
  const std::size_t a = idx.front(), b = idx.back();
  rep.c2 = std::max(c * ell[a] - result.u[a], c * ell[b] - result.u[b]);
  rep.worst_violation = 0.0;
  for (std::size_t i : idx) {
    const double gap = (c * ell[i] - rep.c2) - result.u[i];
    rep.worst_violation = std::max(rep.worst_violation, gap);
  }
  rep.dominated = rep.worst_violation <= 1e-12 * (1.0 + max_abs(result.u));
  rep.holds = rep.subsolution && rep.dominated;
  return rep;
}

// ------------------------------------------------------------ level sets --

LevelSetPoint level_set_extract(const SolverResult& result, double t) {
  const auto& u = result.u;
  const auto& s = result.s;
  if (u.size() < 2) throw DomainError("level_set_extract: empty result");
  const double top = u.back();
  if (t < 0.0 || t > top * (1.0 + 1e-14)) throw DomainError("level " + std::to_string(t) + " out of range");
  LevelSetPoint out;
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    if (u[i + 1] < u[i] - 1e-12 * (1.0 + std::abs(u[i]))) out.monotone = false;
  if (t == 0.0) {
    out.s = s.front();
    return out;
  }
  std::size_t cell = 0;
  while (cell + 1 < u.size() && u[cell + 1] < t) ++cell;
  if (cell + 1 >= u.size()) {
    out.s = s.back();
    return out;
  }
  if (!out.monotone) {
    const double w = (t - u[cell]) / (u[cell + 1] - u[cell]);
    out.s = s[cell] + w * (s[cell + 1] - s[cell]);
    return out;
  }
  const MonotoneCubic interp(s, u);
  auto f = [&](double x) { return interp(x) - t; };
  const double fa = u[cell] - t, fb = u[cell + 1] - t;
  if (fa == 0.0) {
    out.s = s[cell];
    return out;
  }
  if (fb == 0.0) {
    out.s = s[cell + 1];
    return out;
  }
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, s[cell], s[cell + 1], fa, fb,
                                                  boost::math::tools::eps_tolerance<double>(52),
                                                  iters);
  out.s = 0.5 * (a + b);
  return out;
}

// ------------------------------------------------------ convergence study --

std::pair<double, int> core_error(const RadialMetric& metric, double s0, const SolverResult& result,
                                  double core_level) {
  const HullStructure hull = analyze_hull_structure(metric);
  const double R0 = metric.R(minimizing_hull(hull, s0));
  double err = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < result.s.size(); ++i) {
    const double level = 2.0 * std::log(envelope_radius(metric, hull, result.s[i]) / R0);
    if (level > core_level) continue;
    err = std::max(err, std::abs(result.u[i] - level));
    ++count;
  }
  return {err, count};
}

namespace {

std::vector<double> warm_start(const RegularizedProblem& problem, const SolverResult& prev) {
  const auto s = grid_coordinates(problem);
  const MonotoneCubic interp(prev.s, prev.u);
  const double s_end = prev.s.back();
  const double R_end = problem.metric.R(s_end);
  std::vector<double> u(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = s[i] <= s_end ? interp(s[i])
                                   : prev.u.back() + 2.0 * std::log(problem.metric.R(s[i]) / R_end);
    u[i] = std::min(v, problem.L - 2.0);
  }
  u.front() = 0.0;
  u.back() = problem.L - 2.0;
  return u;
}

}  // namespace

ConvergenceReport convergence_study(const RadialMetric& metric, double s0,
                                    const std::vector<ScheduleStage>& schedule,
                                    double core_level) {
  if (schedule.empty()) throw ConfigError("schedule", "needs at least one stage");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i].epsilon < schedule[i - 1].epsilon))
      throw ConfigError("schedule.epsilon", "must be strictly decreasing");
    if (!(schedule[i].L > schedule[i - 1].L))
      throw ConfigError("schedule.L", "must be strictly increasing");
  }
  ConvergenceReport rep;
  rep.core_level = core_level >= 0.0 ? core_level : 0.5 * (schedule.front().L - 2.0);

  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const auto& st = schedule[k];
    const RegularizedProblem prob = make_problem(metric, s0, st.L, st.epsilon, st.n);
    StageRecord rec;
    rec.stage = st;
    rec.sL = prob.sL;
    SolverResult res;
    if (k > 0) {
      res = solve_newton(prob, warm_start(prob, rep.solutions.back()));
      rec.warm_started = res.converged;
    }
    if (!res.converged) res = solve_newton(prob);
    rec.newton_iterations = res.newton_iterations;
    rec.residual_norm = res.residual_norm;
    rec.converged = res.converged;
    if (!res.converged)
      throw NumericalError("convergence_study: stage " + std::to_string(k) +
                           " failed to converge (" + res.message + ")");
    const auto [err, count] = core_error(metric, s0, res, rep.core_level);
    rec.core_error = err;
    rec.core_points = count;
    if (k > 0) {
      const SolverResult& prev = rep.solutions.back();
      const MonotoneCubic interp(prev.s, prev.u);
      const HullStructure hull = analyze_hull_structure(metric);
      const double R0 = metric.R(minimizing_hull(hull, s0));
      double d = 0.0;
      for (std::size_t i = 0; i < res.s.size(); ++i) {
        if (res.s[i] > prev.s.back()) break;
        const double level = 2.0 * std::log(envelope_radius(metric, hull, res.s[i]) / R0);
        if (level > rep.core_level) continue;
        d = std::max(d, std::abs(res.u[i] - interp(res.s[i])));
      }
      rec.successive_distance = d;
    }
    rep.stages.push_back(rec);
    rep.solutions.push_back(std::move(res));
  }
  for (std::size_t k = 1; k < rep.stages.size(); ++k)
    if (!(rep.stages[k].core_error < rep.stages[k - 1].core_error)) rep.error_monotone = false;
  for (std::size_t k = 2; k < rep.stages.size(); ++k)
    if (!(rep.stages[k].successive_distance < rep.stages[k - 1].successive_distance))
      rep.distance_monotone = false;
  rep.passed = rep.error_monotone && rep.distance_monotone;
  return rep;
}

}  // namespace imcf
