#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "imcf/flow.hpp"

using namespace imcf;
using std::numbers::pi;

TEST_CASE("minimizing hull") {
  CHECK(minimizing_hull(make_preset("euclidean"), 1.0) == 1.0);
  CHECK(minimizing_hull(make_preset("schwarzschild-areal", {{"m", 1.0}}), 3.0) == 3.0);

  // Inside the dip's basin the hull is the first coordinate past the neck with equal area.
  const auto neck = make_preset("neck");
  const auto hull = analyze_hull_structure(neck);
  REQUIRE(hull.intervals.size() == 1);
  const auto& iv = hull.intervals.front();
  const double s = 0.5 * (iv.s_jump + iv.s_target);
  CHECK(minimizing_hull(neck, s) == doctest::Approx(iv.s_target));
  CHECK(neck.R(iv.s_jump) == doctest::Approx(neck.R(iv.s_target)).epsilon(1e-10));
}

TEST_CASE("euclidean flow follows the area law") {
  const auto eu = make_preset("euclidean");
  const auto prof = exact_flow(eu, 1.0, 2.0 * std::log(2.0), 64);
  const auto& last = prof.samples.back();
  CHECK(last.s == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(last.B == doctest::Approx(16.0 * pi).epsilon(1e-12));
  CHECK(last.v == doctest::Approx(4.0 * pi / 3.0 * 7.0).epsilon(1e-10));
  CHECK(prof.jumps.empty());
  for (std::size_t i = 1; i < prof.samples.size(); ++i) {
    CHECK(prof.samples[i].t > prof.samples[i - 1].t);
    CHECK(prof.samples[i].B == doctest::Approx(prof.samples[0].B * std::exp(prof.samples[i].t)).epsilon(1e-12));
    CHECK(prof.samples[i].v > prof.samples[i - 1].v);
  }
}

TEST_CASE("schwarzschild flow from the horizon keeps the Hawking mass") {
  const auto sch = make_preset("schwarzschild-areal", {{"m", 1.0}});
  const auto prof = exact_flow(sch, 2.0, 2.0 * std::log(2.0), 64);
  CHECK(prof.samples.back().s == doctest::Approx(4.0).epsilon(1e-12));
  for (const auto& p : prof.samples) CHECK(p.m == doctest::Approx(1.0).epsilon(1e-12));
  const auto ger = geroch_check(prof);
  CHECK(ger.hypothesis_met);
  CHECK(ger.nondecreasing);
  CHECK(std::abs(ger.min_increment) <= 1e-12);
}

TEST_CASE("t_of_v") {
  const auto eu = make_preset("euclidean");
  const double s0 = 1e-3;
  const auto prof = exact_flow(eu, s0, 16.0, 512);
  CHECK(t_of_v(prof, 0.0) == prof.samples.front().t);
  const double v0 = 4.0 * pi / 3.0 * s0 * s0 * s0;
  for (double v : {4.0 * pi / 3.0, 0.1, 10.0}) {
    const double expected = 2.0 / 3.0 * std::log(3.0 * (v + v0) / (4.0 * pi)) - 2.0 * std::log(s0);
    CHECK(t_of_v(prof, v) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("volume growth and Lipschitz checks") {
  const auto eu = exact_flow(make_preset("euclidean"), 1e-3, 16.0, 512);
  CHECK(volume_growth_check(eu).max_deviation <= 1e-4);
  const auto lip = lipschitz_bound_check(eu);
  CHECK(lip.holds);
  CHECK(lip.max_equality_gap <= 1e-4);

  const auto sch = exact_flow(make_preset("schwarzschild-areal", {{"m", 1.0}}), 2.5, 12.0, 512);
  CHECK(volume_growth_check(sch).max_deviation <= 1e-4);
  CHECK(lipschitz_bound_check(sch).max_equality_gap <= 1e-4);

  const auto tiny = exact_flow(make_preset("euclidean"), 1.0, 1.0, 2);
  const auto rep = volume_growth_check(tiny);
  REQUIRE_FALSE(rep.flags.empty());
  CHECK(rep.flags.front().find("insufficient samples") != std::string::npos);
}

TEST_CASE("neck: one jump with equal areas and frozen time") {
  const auto neck = make_preset("neck");
  const auto prof = exact_flow(neck, 1e-3, 16.0, 1024);
  REQUIRE(prof.jumps.size() == 1);
  const auto& j = prof.jumps.front();
  CHECK_FALSE(j.initial);
  const double b1 = 4.0 * pi * neck.R(j.s_before) * neck.R(j.s_before);
  const double b2 = 4.0 * pi * neck.R(j.s_after) * neck.R(j.s_after);
  CHECK(std::abs(b1 - b2) <= 1e-8 * b1);

  for (double f : {0.1, 0.5, 0.9})
    CHECK(t_of_v(prof, j.v_before + f * (j.v_after - j.v_before)) == doctest::Approx(j.t1).epsilon(1e-14));

  // Brute-force envelope: the jump region is where R exceeds its suffix minimum.
  const int N = 200001;
  const double lo = neck.s_min(), hi = neck.s_max();
  std::vector<double> s(N), R(N), suffix(N);
  for (int i = 0; i < N; ++i) {
    s[i] = lo + (hi - lo) * i / (N - 1);
    R[i] = neck.R(s[i]);
  }
  suffix[N - 1] = R[N - 1];
  for (int i = N - 2; i >= 0; --i) suffix[i] = std::min(R[i], suffix[i + 1]);
  int first = -1, last = -1;
  for (int i = 1; i + 1 < N; ++i) {
    const bool inside = R[i] > suffix[i + 1];
    if (inside && first < 0) first = i;
    if (!inside && first >= 0) {
      last = i;
      break;
    }
  }
  REQUIRE(first > 0);
  REQUIRE(last > first);
  const double cell_lo = neck.volume(s[first]) - neck.volume(s[first - 1]);
  const double cell_hi = neck.volume(s[last]) - neck.volume(s[last - 1]);
  CHECK(std::abs(neck.volume(s[first]) - prof.volume_offset - j.v_before) <= cell_lo);
  CHECK(std::abs(neck.volume(s[last]) - prof.volume_offset - j.v_after) <= cell_hi);

  const auto lip = lipschitz_bound_check(prof);
  CHECK(lip.holds);
  CHECK(lip.jump_intervals == 1);
}

TEST_CASE("neck: start inside the basin jumps immediately") {
  const auto neck = make_preset("neck");
  const auto hull = analyze_hull_structure(neck);
  const auto& iv = hull.intervals.front();
  const auto prof = exact_flow(neck, 0.5 * (iv.s_jump + iv.s_target), 4.0, 64);
  REQUIRE_FALSE(prof.jumps.empty());
  CHECK(prof.jumps.front().initial);
  CHECK(prof.flow_start == doctest::Approx(iv.s_target));
}

TEST_CASE("Geroch monotonicity on the cored metric") {
  const auto cored = make_preset("cored-schwarzschild", {{"m", 1.0}, {"b", 1.0}});
  const auto prof = exact_flow(cored, 1e-3, 26.0, 1024);
  const auto ger = geroch_check(prof);
  CHECK(ger.hypothesis_met);
  CHECK(ger.nondecreasing);
  CHECK(ger.min_increment >= -1e-8);
  CHECK(std::abs(ger.final_mass - 1.0) <= 1e-4);
  CHECK(prof.samples.back().m > prof.samples[prof.samples.size() / 2].m);

  const auto eu = geroch_check(exact_flow(make_preset("euclidean"), 1e-3, 10.0, 128));
  CHECK(eu.final_mass == 0.0);
}

TEST_CASE("flow beyond the domain is truncated") {
  const auto prof = exact_flow(make_preset("euclidean"), 1.0, 2.0 * std::log(1e5), 64);
  CHECK(prof.truncated);
  CHECK(prof.samples.back().s <= 1e4);
}
