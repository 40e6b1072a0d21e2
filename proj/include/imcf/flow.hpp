#pragma once

#include <string>
#include <vector>

#include "imcf/geometry.hpp"

namespace imcf {

/// A maximal coordinate interval (s_jump, s_target) whose centered spheres are
/// not minimizing hulls. R(s_jump) == R(s_target) and s_target is a local
/// minimum of R that is a strict record against everything outside it.
struct JumpInterval {
  double s_jump = 0.0;
  double s_target = 0.0;
  double radius = 0.0;
};

/// Minimizing-hull structure of the area profile, read off from the
/// right-to-left running minimum of R.
struct HullStructure {
  std::vector<JumpInterval> intervals;

  const JumpInterval* containing(double s) const;
};

HullStructure analyze_hull_structure(const RadialMetric& metric);

/// Smallest s' >= s whose centered ball is a minimizing hull of the ball at s.
double minimizing_hull(const RadialMetric& metric, double s);
double minimizing_hull(const HullStructure& hull, double s);

/// min over sigma >= s of R(sigma): the areal radius seen by the weak flow.
double envelope_radius(const RadialMetric& metric, const HullStructure& hull, double s);

struct FlowSample {
  double t = 0.0;
  double s = 0.0;
  double B = 0.0;
  double m = 0.0;
  double v = 0.0;
  double H = 0.0;
};

struct JumpEvent {
  double t1 = 0.0;
  double s_before = 0.0;
  double s_after = 0.0;
  double v_before = 0.0;
  double v_after = 0.0;
  /// The start sphere itself was not a minimizing hull; area drops here.
  bool initial = false;
};

struct FlowState {
  double t = 0.0;
  double s = 0.0;
  double B = 0.0;
  double m = 0.0;
  double H = 0.0;
  bool in_jump = false;
};

class FlowProfile {
 public:
  FlowProfile(RadialMetric metric, HullStructure hull) : metric_(std::move(metric)), hull_(std::move(hull)) {}

  const RadialMetric& metric() const { return metric_; }
  const HullStructure& hull() const { return hull_; }

  double start = 0.0;          ///< requested start coordinate s0
  double flow_start = 0.0;     ///< minimizing hull of s0, where t = 0
  double volume_offset = 0.0;  ///< Vol from s_min to s0
  double t_max = 0.0;
  bool truncated = false;
  std::vector<FlowSample> samples;
  std::vector<JumpEvent> jumps;

  double initial_area() const { return samples.empty() ? 0.0 : samples.front().B; }
  double max_volume() const { return samples.empty() ? 0.0 : samples.back().v; }

  /// Weak-flow state of the region with volume v above the start sphere.
  /// On a jump interval the pre-jump surface is reported.
  FlowState state_at_volume(double v) const;
  /// Level of the weak flow through coordinate s: 2 log(E(s)/R(flow_start)).
  double level_at(double s) const;

 private:
  RadialMetric metric_;
  HullStructure hull_;
};

FlowProfile exact_flow(const RadialMetric& metric, double s0, double t_max, int n);

/// t(v) = inf{tau : Vol(G_tau) >= v}; constant on jump volume intervals.
double t_of_v(const FlowProfile& profile, double v);

/// Consecutive sample runs not separated by a jump, as [first, last] indices.
std::vector<std::pair<std::size_t, std::size_t>> flow_segments(const FlowProfile& profile);

struct VolumeGrowthReport {
  double max_deviation = 0.0;
  int checked = 0;
  int unresolved = 0;  ///< samples whose finite difference failed the resolution test
  int insufficient_segments = 0;
  std::vector<std::string> flags;
};

VolumeGrowthReport volume_growth_check(const FlowProfile& profile);

struct LipschitzReport {
  bool holds = true;
  double worst_margin = 0.0;        ///< min of (rhs - lhs)/rhs
  double max_equality_gap = 0.0;    ///< max of |lhs - rhs|/rhs
  int checked = 0;
  int unresolved = 0;
  int jump_intervals = 0;
  std::vector<std::string> flags;
};

LipschitzReport lipschitz_bound_check(const FlowProfile& profile, double tol = 1e-4);

struct GerochReport {
  bool hypothesis_met = true;
  double min_scalar_curvature = 0.0;
  bool nondecreasing = true;
  double min_increment = 0.0;
  double final_mass = 0.0;
};

GerochReport geroch_check(const FlowProfile& profile, double scal_tol = 1e-8);

}  // namespace imcf
