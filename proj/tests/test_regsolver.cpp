#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "imcf/errors.hpp"
#include "imcf/flow.hpp"
#include "imcf/regsolver.hpp"

using namespace imcf;

namespace {

double max_abs(const std::vector<double>& r) {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("configuration errors name the field") {
  const auto eu = make_preset("euclidean");
  try {
    make_problem(eu, 1.0, 8.0, 0.0, 256);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "epsilon");
  }
  CHECK_THROWS_AS(make_problem(eu, 1.0, 8.0, 0.1, 8), ConfigError);
  CHECK_THROWS_AS(make_problem(eu, 1.0, 1.5, 0.1, 256), ConfigError);
}

TEST_CASE("residual of the flat-space level function is a second-order discretization error") {
  const auto eu = make_preset("euclidean");
  auto residual = [&](int n) {
    const auto p = make_problem(eu, 1.0, 8.0, 1e-12, n);
    const auto s = grid_coordinates(p);
    std::vector<double> u(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) u[i] = 2.0 * std::log(s[i]);
    return max_abs(assemble_residual(p, u));
  };
  const double coarse = residual(1024), fine = residual(2048);
  MESSAGE("residuals " << coarse << " -> " << fine);
  CHECK(fine <= 1e-3);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("boundary interpolant at eps = 1 gives a finite residual") {
  const auto p = make_problem(make_preset("cored-schwarzschild", {{"m", 1.0}, {"b", 1.0}}), 0.5, 6.0, 1.0, 256);
  const auto s = grid_coordinates(p);
  std::vector<double> u(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) u[i] = (p.L - 2.0) * (s[i] - s.front()) / (s.back() - s.front());
  for (double r : assemble_residual(p, u)) CHECK(std::isfinite(r));
}

TEST_CASE("eps = 1 converges quickly") {
  const auto p = make_problem(make_preset("euclidean"), 0.01, 8.0, 1.0, 128);
  const auto r = solve_newton(p);
  CHECK(r.converged);
  CHECK(r.newton_iterations <= 25);
  CHECK(residual_within_tolerance(r));
}

TEST_CASE("euclidean solve: level sets, maximum principle, barrier") {
  const auto eu = make_preset("euclidean");
  const auto p = make_problem(eu, 1.0, 8.0, 1e-2, 2048);
  const auto r = solve_newton(p);
  REQUIRE(r.converged);
  CHECK(r.residual_norm <= 1e-10 * (1.0 + max_abs(r.u)));
  CHECK(level_set_extract(r, 2.0 * std::log(2.0)).s == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(level_set_extract(r, 0.0).s == p.s0);
  for (std::size_t i = 1; i + 1 < r.u.size(); ++i) CHECK(r.u[i] <= r.u.back() + 1e-12);

  const auto bar = subsolution_barrier(p, r);
  CHECK(bar.sufficient_range);
  CHECK(bar.holds);
  CHECK(bar.c1_fit == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("barrier guard on a short domain") {
  const auto eu = make_preset("euclidean");
  const auto p = make_problem(eu, 1.0, 3.0, 0.5, 128);
  const auto r = solve_newton(p);
  const auto bar = subsolution_barrier(p, r);
  CHECK_FALSE(bar.sufficient_range);
  CHECK(bar.note == "insufficient asymptotic range");
}

TEST_CASE("schwarzschild solve is monotone and tracks the exact flow") {
  const auto sch = make_preset("schwarzschild-areal", {{"m", 1.0}});
  const double s0 = 2.5, eps = 1e-3;
  const auto p = make_problem(sch, s0, auto_level(sch, s0, eps), eps, 4096);
  const auto r = solve_newton(p);
  REQUIRE(r.converged);
  for (std::size_t i = 1; i < r.u.size(); ++i) CHECK(r.u[i] >= r.u[i - 1] - 1e-10);
  CHECK(subsolution_barrier(p, r).holds);

  // Mid-range level set against the exact coordinate rho = s0 e^(t/2).
  const double t = 2.0;
  CHECK(level_set_extract(r, t).s == doctest::Approx(s0 * std::exp(0.5 * t)).epsilon(5e-3));
}

TEST_CASE("convergence study") {
  const auto sch = make_preset("schwarzschild-areal", {{"m", 1.0}});
  const auto rep = convergence_study(sch, 2.5, {{0.04, 4.0, 1024}, {4e-3, 8.0, 2048}, {4e-4, 9.5, 4096}});
  REQUIRE(rep.stages.size() == 3);
  CHECK(rep.passed);
  CHECK(rep.stages[2].core_error < rep.stages[0].core_error);
  CHECK(rep.stages[1].warm_started);

  const auto single = convergence_study(make_preset("euclidean"), 1.0, {{0.1, 5.0, 512}});
  CHECK(single.stages.size() == 1);
  CHECK(single.error_monotone);
  CHECK(single.distance_monotone);
  CHECK(single.stages[0].successive_distance < 0.0);
}
