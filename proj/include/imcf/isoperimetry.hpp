#pragma once

#include <string>
#include <vector>

#include "imcf/flow.hpp"
#include "imcf/geometry.hpp"

namespace imcf {

double classical_isoperimetric_area(double v);

struct RhsResult {
  double value = 0.0;
  double integral = 0.0;       ///< int_0^v (1 - sqrt(16 pi) B^(-1/2) m)^(1/2) dv'
  double integral_error = 0.0;
  bool clamped = false;        ///< the radicand went negative somewhere
};

/// Integral of the bound integrand over volumes [0, v] of the flow.
RhsResult bound_integral(const FlowProfile& profile, double v);

/// (36 pi)^(1/3) (int_0^v (1 - sqrt(16 pi) B^(-1/2) m)^(1/2))^(2/3) for flows
/// started from a point (initial area <= 1e-4).
RhsResult theorem1_rhs(const FlowProfile& profile, double v);

enum class Verdict { Pass, Fail, HypothesisNotMet };
std::string to_string(Verdict v);

struct BoundReport {
  double v = 0.0;
  double B = 0.0;
  double rhs = 0.0;
  double classical = 0.0;
  double slack = 0.0;        ///< (rhs^(3/2) - B^(3/2)) / rhs^(3/2)
  double slack_error = 0.0;  ///< quadrature error propagated into slack
  Verdict verdict = Verdict::Fail;
};

/// B^(3/2)(v) - B^(3/2)(0) <= 6 sqrt(pi) int_0^v (...)^(1/2) at each grid volume,
/// reported through rhs = (B(0)^(3/2) + 6 sqrt(pi) I)^(2/3).
std::vector<BoundReport> check_bound(const FlowProfile& profile, const std::vector<double>& v_grid,
                                     double scal_tol = 1e-8);

enum class OracleMode { Full, Exterior };

struct OracleResult {
  double area = 0.0;
  double s_inner = 0.0;  ///< inner boundary coordinate (region starts here)
  double s_outer = 0.0;
  bool inner_boundary = false;  ///< s_inner sphere counts toward the perimeter
  std::string candidate;        ///< "ball" or "annulus"
};

/// Outermost coordinate with H = 0, or s_min when no minimal sphere exists.
double exterior_start(const RadialMetric& metric);

/// Least boundary area among centered balls and annuli of volume v.
OracleResult oracle_A(const RadialMetric& metric, double v, OracleMode mode);

struct IsoProfile {
  std::vector<double> v_grid;
  std::vector<double> A;
  std::vector<double> A_ext;
  std::vector<std::string> candidate;
  std::vector<std::string> candidate_ext;
  std::string base = "centered balls and centered annuli";
};

IsoProfile build_iso_profile(const RadialMetric& metric, const std::vector<double>& v_grid);

struct MonotonicityReport {
  bool passed = true;
  double worst_decrement = 0.0;
  int worst_index = -1;  ///< index i with A_ext[i] < A_ext[i-1], or -1
};

MonotonicityReport monotonicity_check(const IsoProfile& profile, double rel_tol = 1e-9);

struct ExteriorFoliationReport {
  double s_ext = 0.0;
  bool positive = true;
  double first_violation = -1.0;
};

/// Checks H > 0 on the exterior region rather than assuming it.
ExteriorFoliationReport exterior_foliation_check(const RadialMetric& metric, int samples = 4096);

struct RigidityReport {
  bool equality_found = false;
  double equality_volume = 0.0;
  double min_relative_gap = 0.0;
  double max_abs_scalar_curvature = 0.0;
  double abs_adm_mass = 0.0;
  bool flat = false;
  bool consistent = false;
  double flow_min_gap = 0.0;  ///< min over the v grid of |B(v) - classical| / classical
};

RigidityReport rigidity_probe(const RadialMetric& metric, const FlowProfile& profile,
                              const IsoProfile& iso, double tol = 1e-6);

struct MeeksYauParams {
  double K = 0.0;
  double d = 0.0;
  double iota = 0.0;
  double r() const;
};

/// 2 pi K^-2 int_0^r sin^2(K tau)/tau dtau.
double meeks_yau_bound(double K, double r);
double meeks_yau_bound(const MeeksYauParams& params);

}  // namespace imcf
