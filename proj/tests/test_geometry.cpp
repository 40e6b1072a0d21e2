#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "imcf/errors.hpp"
#include "imcf/geometry.hpp"

using namespace imcf;
using std::numbers::pi;

TEST_CASE("presets: coefficient functions") {
  const auto eu = make_preset("euclidean");
  CHECK(eu.A(3.0) == 1.0);
  CHECK(eu.R(3.0) == 3.0);
  CHECK(eu.has_center());

  const auto sch = make_preset("schwarzschild-areal", {{"m", 1.0}});
  CHECK(sch.s_min() == 2.0);
  CHECK(sch.has_horizon());
  CHECK(sch.A(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sch.R(4.0) == 4.0);
}

TEST_CASE("invalid configurations name the field") {
  auto field_of = [](auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of([] { make_preset("klein-bottle"); }) == "preset");
  CHECK(field_of([] { make_preset("euclidean", {{"m", 1.0}}); }) == "params.m");
  CHECK(field_of([] { make_tabulated({0, 1, 0.5, 2, 3, 4, 5, 6}, std::vector<double>(8, 1.0),
                                     {0, 1, 2, 3, 4, 5, 6, 7}); }) == "tabulated.s");
  CHECK(field_of([] { make_tabulated({0, 1, 2}, {1, 1, 1}, {0, 1, 2}); }) != "<none>");
}

TEST_CASE("sphere geometry values") {
  const auto eu = make_preset("euclidean");
  const auto g = sphere_geometry(eu, 2.0);
  CHECK(g.area == doctest::Approx(16.0 * pi));
  CHECK(g.mean_curvature == doctest::Approx(1.0));
  CHECK(g.hawking_mass == doctest::Approx(0.0).epsilon(1e-15));

  const auto sch = make_preset("schwarzschild-areal", {{"m", 1.0}});
  const auto h = sphere_geometry(sch, 2.0);
  CHECK(h.mean_curvature == 0.0);
  CHECK(h.hawking_mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(h.area == doctest::Approx(16.0 * pi));
  const auto q = sphere_geometry(sch, 4.0);
  CHECK(q.mean_curvature == doctest::Approx(0.3535533906).epsilon(1e-10));
  CHECK(q.hawking_mass == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Hawking mass equals m on Schwarzschild spheres") {
  for (double m : {0.5, 1.0, 2.0}) {
    const auto sch = make_preset("schwarzschild-areal", {{"m", m}});
    for (int k = 0; k <= 400; ++k) {
      const double rho = 2.0 * m * std::pow(50.0, k / 400.0);
      CHECK(std::abs(sphere_geometry(sch, rho).hawking_mass - m) <= 1e-8);
    }
  }
}

TEST_CASE("Hawking mass bound and enclosed volume monotonicity") {
  for (const auto& metric :
       {make_preset("euclidean"), make_preset("schwarzschild-areal", {{"m", 1.0}}),
        make_preset("cored-schwarzschild", {{"m", 1.0}, {"b", 1.0}}), make_preset("neck")}) {
    double prev_v = -1.0;
    const double lo = metric.s_min(), hi = std::min(metric.s_max(), metric.s_min() + 40.0);
    for (int k = 1; k <= 500; ++k) {
      const double s = lo + (hi - lo) * k / 500.0;
      const auto g = sphere_geometry(metric, s);
      const double cap = std::sqrt(g.area / (16.0 * pi));
      CHECK(g.hawking_mass <= cap * (1.0 + 1e-14));
      if (g.mean_curvature != 0.0) CHECK(g.hawking_mass < cap);
      CHECK(g.enclosed_volume > prev_v);
      prev_v = g.enclosed_volume;
    }
  }
}

TEST_CASE("Schwarzschild volume matches an independent quadrature") {
  const double m = 1.0;
  const auto sch = make_preset("schwarzschild-areal", {{"m", m}});
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double rho : {2.001, 2.5, 4.0, 30.0}) {
    // r = 2m + w^2 turns the integrand into 8 pi r^(5/2).
    auto g = [&](double w) {
      const double r = 2.0 * m + w * w;
      return 8.0 * pi * std::pow(r, 2.5);
    };
    const double ref = ts.integrate(g, 0.0, std::sqrt(rho - 2.0 * m));
    CHECK(sch.volume(rho) == doctest::Approx(ref).epsilon(1e-11));
  }
  CHECK(sch.volume(2.0) == 0.0);
  CHECK(sch.coordinate_at_volume(sch.volume(3.7)) == doctest::Approx(3.7).epsilon(1e-12));
}

TEST_CASE("scalar curvature") {
  const auto eu = make_preset("euclidean");
  CHECK(scalar_curvature(eu, 3.0) == 0.0);

  const auto sch = make_preset("schwarzschild-areal", {{"m", 1.0}});
  for (double rho : {2.01, 3.0, 10.0, 500.0}) CHECK(std::abs(scalar_curvature(sch, rho)) <= 1e-8);

  const auto cored = make_preset("cored-schwarzschild", {{"m", 1.0}, {"b", 1.0}});
  CHECK(scalar_curvature(cored, 1e-4) == doctest::Approx(12.0 / std::pow(1.5, 5)).epsilon(1e-7));
  for (int k = 1; k <= 200; ++k) CHECK(scalar_curvature(cored, 0.05 * k) > 0.0);

  // Independent check: Scal = -8 phi^-5 Lap(phi) with a finite-difference Laplacian.
  auto phi = [](double r) { return 1.0 + 0.5 / std::sqrt(r * r + 1.0); };
  for (double r : {0.3, 1.0, 2.5}) {
    const double h = 1e-3;
    const double lap = (phi(r + h) - 2.0 * phi(r) + phi(r - h)) / (h * h) + (phi(r + h) - phi(r - h)) / (h * r);
    CHECK(scalar_curvature(cored, r) == doctest::Approx(-8.0 * lap / std::pow(phi(r), 5)).epsilon(1e-5));
  }
}

TEST_CASE("ADM mass") {
  CHECK(std::abs(adm_mass(make_preset("euclidean")).mass) <= 1e-12);
  for (double m : {0.5, 1.0, 2.0})
    CHECK(adm_mass(make_preset("schwarzschild-areal", {{"m", m}})).mass == doctest::Approx(m).epsilon(1e-8));
  CHECK(adm_mass(make_preset("cored-schwarzschild", {{"m", 1.0}, {"b", 1.0}})).mass ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(adm_mass(make_preset("round-3-sphere-cap")), DomainError);
}

TEST_CASE("asymptotic flatness decay check") {
  const auto eu = af_decay_check(make_preset("euclidean"), 1.0);
  CHECK(eu.passes);
  CHECK(eu.witnessed_constant == 0.0);
  const auto sch = af_decay_check(make_preset("schwarzschild-areal", {{"m", 1.0}}), 4.0);
  CHECK(sch.passes);
  CHECK(std::isfinite(sch.witnessed_constant));
  CHECK_FALSE(af_decay_check(make_preset("round-3-sphere-cap", {{"lambda", 10.0}}), 1.0).passes);
}

TEST_CASE("tabulated round trip keeps first derivatives") {
  const auto cored = make_preset("cored-schwarzschild", {{"m", 1.0}, {"b", 1.0}});
  const auto tab = tabulate(cored, 4096, 0.0, 20.0);
  for (double s : {0.37, 1.0, 4.2, 11.1, 19.0}) {
    const auto p = cored.at(s), q = tab.at(s);
    CHECK(q.R == doctest::Approx(p.R).epsilon(1e-6));
    CHECK(q.dR == doctest::Approx(p.dR).epsilon(1e-6));
    CHECK(q.A() == doctest::Approx(p.A()).epsilon(1e-6));
  }
}

TEST_CASE("glued metric") {
  CHECK(smoothstep5(0.0) == 0.0);
  CHECK(smoothstep5(1.0) == 1.0);
  CHECK(smoothstep5(0.5) == doctest::Approx(0.5));

  const auto glued = build_glued_metric({make_preset("euclidean"), 4.0, 10.0});
  CHECK(std::abs(scalar_curvature(glued, 8.5)) <= 1e-12);
  CHECK(scalar_curvature(glued, 10.5) == doctest::Approx(0.24).epsilon(1e-8));

  const auto sch = make_preset("schwarzschild-areal", {{"m", 1.0}});
  const auto gs = build_glued_metric({sch, 10.0, 100.0});
  for (double rho : {2.5, 7.0, 15.0}) {
    CHECK(gs.A(rho) == sch.A(rho));
    CHECK(gs.R(rho) == sch.R(rho));
  }
}
