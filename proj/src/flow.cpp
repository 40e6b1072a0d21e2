#include "imcf/flow.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>

namespace imcf {

namespace {

template <class F>
double bracketed_root(F f, double a, double b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t iters = 200;
  auto [x0, x1] = boost::math::tools::toms748_solve(
      f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (x0 + x1);
}

std::vector<double> scan_grid(const RadialMetric& metric) {
  constexpr int kPoints = 16384;
  const double lo = metric.s_min(), hi = metric.s_max();
  const double span = hi - lo;
  std::vector<double> s;
  s.reserve(kPoints + 2);
  s.push_back(lo);
  for (int k = 0; k <= kPoints; ++k)
    s.push_back(lo + span * std::pow(1e-6, 1.0 - static_cast<double>(k) / kPoints));
  s.back() = hi;
  return s;
}

}  // namespace

const JumpInterval* HullStructure::containing(double s) const {
  for (const auto& iv : intervals)
    if (s > iv.s_jump && s < iv.s_target) return &iv;
  return nullptr;
}

HullStructure analyze_hull_structure(const RadialMetric& metric) {
  const MetricPoint tail = metric.at(metric.s_max());
  if (tail.dR < 0.0)
    throw DomainError("area profile decreases at the outer end of the domain (non-AF input)");

  const std::vector<double> s = scan_grid(metric);
  const std::size_t n = s.size();
  std::vector<double> R(n), E(n);
  for (std::size_t k = 0; k < n; ++k) R[k] = metric.R(s[k]);
  E[n - 1] = R[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) E[k] = std::min(R[k], E[k + 1]);

  HullStructure hull;
  std::size_t k = 0;
  while (k < n) {
    if (!(R[k] > E[k] * (1.0 + 1e-13))) {
      ++k;
      continue;
    }
    std::size_t k1 = k;
    while (k < n && R[k] > E[k] * (1.0 + 1e-13)) ++k;
    const std::size_t kb = k;  // first admissible grid point after the run

    // The target is a local minimum of R; refine on R' = 0 around it.
    double sb = s[kb];
    if (kb + 1 < n) {
      const double a = s[kb - 1], b = s[kb + 1];
      const double da = metric.at(a).dR, db = metric.at(b).dR;
      if (da < 0.0 && db > 0.0)
        sb = bracketed_root([&](double x) { return metric.at(x).dR; }, a, b, da, db);
    }
    const double level = metric.R(sb);

    std::size_t kl = k1 > 0 ? k1 - 1 : 0;
    while (kl > 0 && R[kl] > level) --kl;
    auto g = [&](double x) { return metric.R(x) - level; };
    double sj = s[kl];
    const double ga = g(s[kl]), gb = g(s[k1]);
    if (ga <= 0.0 && gb > 0.0) sj = bracketed_root(g, s[kl], s[k1], ga, gb);
    hull.intervals.push_back({sj, sb, level});
  }
  return hull;
}

double minimizing_hull(const HullStructure& hull, double s) {
  if (const JumpInterval* iv = hull.containing(s)) return iv->s_target;
  return s;
}

double minimizing_hull(const RadialMetric& metric, double s) {
  if (!metric.contains(s)) throw DomainError("minimizing_hull: coordinate outside domain");
  return minimizing_hull(analyze_hull_structure(metric), s);
}

double envelope_radius(const RadialMetric& metric, const HullStructure& hull, double s) {
  if (const JumpInterval* iv = hull.containing(s)) return iv->radius;
  return metric.R(s);
}

// ------------------------------------------------------------- the flow --

FlowProfile exact_flow(const RadialMetric& metric, double s0, double t_max, int n) {
  if (!metric.contains(s0)) throw DomainError("exact_flow: start outside the metric domain");
  if (n < 2) throw ConfigError("samples", "need at least two samples");
  if (!(t_max > 0.0)) throw ConfigError("t_max", "must be positive");

  FlowProfile profile(metric, analyze_hull_structure(metric));
  const HullStructure& hull = profile.hull();
  profile.start = s0;
  profile.t_max = t_max;
  profile.volume_offset = metric.volume(s0);
  const double start = minimizing_hull(hull, s0);
  profile.flow_start = start;

  const MetricPoint p0 = metric.at(start);
  if (!(p0.R > 0.0)) throw DomainError("exact_flow: start sphere is degenerate (R = 0)");
  if (mean_curvature_at(p0) < -1e-12) {
    std::ostringstream msg;
    msg << "exact_flow: negative mean curvature at s = " << start;
    throw DomainError(msg.str());
  }
  const double R0 = p0.R;

  if (start != s0) {
    JumpEvent ev;
    ev.t1 = 0.0;
    ev.s_before = s0;
    ev.s_after = start;
    ev.v_before = 0.0;
    ev.v_after = metric.volume(start) - profile.volume_offset;
    ev.initial = true;
    profile.jumps.push_back(ev);
  }

  // Admissible segments: R is nondecreasing on each and they meet at equal radii.
  std::vector<std::pair<double, double>> segments;
  double lo = start;
  for (const auto& iv : hull.intervals) {
    if (iv.s_target <= start) continue;
    segments.emplace_back(lo, iv.s_jump);
    lo = iv.s_target;
  }
  segments.emplace_back(lo, metric.s_max());
  const double R_end = metric.R(metric.s_max());

  for (int k = 0; k < n; ++k) {
    const double t = t_max * static_cast<double>(k) / (n - 1);
    const double target = R0 * std::exp(0.5 * t);
    if (target > R_end) {
      profile.truncated = true;
      break;
    }
    double s = start;
    if (k > 0) {
      for (const auto& [a, b] : segments) {
        const double Rb = metric.R(b);
        if (Rb < target) continue;
        auto f = [&](double x) { return metric.R(x) - target; };
        s = bracketed_root(f, a, b, metric.R(a) - target, Rb - target);
        break;
      }
    }
    const MetricPoint p = metric.at(s);
    FlowSample smp;
    smp.t = t;
    smp.s = s;
    smp.B = area_at(p);
    smp.m = hawking_mass_at(p);
    smp.H = mean_curvature_at(p);
    smp.v = metric.volume(s) - profile.volume_offset;
    if (smp.H < -1e-12) {
      std::ostringstream msg;
      msg << "exact_flow: negative mean curvature at s = " << s;
      throw DomainError(msg.str());
    }
    profile.samples.push_back(smp);
  }

  const double t_last = profile.samples.back().t;
  for (const auto& iv : hull.intervals) {
    if (iv.s_target <= start) continue;
    const double t1 = 2.0 * std::log(iv.radius / R0);
    if (t1 > t_last) break;
    JumpEvent ev;
    ev.t1 = t1;
    ev.s_before = iv.s_jump;
    ev.s_after = iv.s_target;
    ev.v_before = metric.volume(iv.s_jump) - profile.volume_offset;
    ev.v_after = metric.volume(iv.s_target) - profile.volume_offset;
    profile.jumps.push_back(ev);
  }
  return profile;
}

double FlowProfile::level_at(double s) const {
  const double R0 = metric_.R(flow_start);
  return 2.0 * std::log(envelope_radius(metric_, hull_, s) / R0);
}

FlowState FlowProfile::state_at_volume(double v) const {
  if (samples.empty()) throw DomainError("state_at_volume: empty profile");
  if (v < 0.0 || v > max_volume() * (1.0 + 1e-12))
    throw DomainError("volume " + std::to_string(v) + " outside the sampled flow range");
  double s = metric_.coordinate_at_volume(volume_offset + std::min(v, max_volume()));
  FlowState st;
  if (s <= flow_start) {
    s = flow_start;
    st.in_jump = flow_start != start && v > 0.0;
  } else if (const JumpInterval* iv = hull_.containing(s)) {
    s = iv->s_jump;
    st.in_jump = true;
  }
  const MetricPoint p = metric_.at(s);
  st.s = s;
  st.t = level_at(s);
  st.B = area_at(p);
  st.m = hawking_mass_at(p);
  st.H = mean_curvature_at(p);
  return st;
}

double t_of_v(const FlowProfile& profile, double v) { return profile.state_at_volume(v).t; }

// --------------------------------------------------------------- checks --

std::vector<std::pair<std::size_t, std::size_t>> flow_segments(const FlowProfile& profile) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& smp = profile.samples;
  if (smp.empty()) return out;
  std::size_t first = 0;
  for (std::size_t i = 0; i + 1 < smp.size(); ++i) {
    bool split = false;
    for (const auto& ev : profile.jumps)
      if (!ev.initial && ev.t1 >= smp[i].t && ev.t1 < smp[i + 1].t) split = true;
    if (split) {
      out.emplace_back(first, i);
      first = i + 1;
    }
  }
  out.emplace_back(first, smp.size() - 1);
  return out;
}

namespace {

// Fourth-order centered derivative dv/dt at index j with stencil spacing `w`.
double dv_dt(const std::vector<FlowSample>& smp, std::size_t j, std::size_t w = 1) {
  const double dt = smp[j + w].t - smp[j].t;
  return (-smp[j + 2 * w].v + 8.0 * smp[j + w].v - 8.0 * smp[j - w].v + smp[j - 2 * w].v) /
         (12.0 * dt);
}

constexpr std::size_t kMinSegment = 16;

// Stencil half-width 4 lets the spacing-2 estimate act as an error indicator.
// Near a minimal sphere (H -> 0) v(t) has a square-root singularity and the
// two estimates disagree; such samples are reported as unresolved, not checked.
struct ResolvedDerivative {
  double value;
  bool resolved;
};

ResolvedDerivative resolved_dv_dt(const std::vector<FlowSample>& smp, std::size_t j) {
  const double fine = dv_dt(smp, j, 1);
  const double coarse = dv_dt(smp, j, 2);
  return {fine, std::abs(fine - coarse) <= 1.5e-4 * std::abs(fine)};
}

}  // namespace

VolumeGrowthReport volume_growth_check(const FlowProfile& profile) {
  VolumeGrowthReport rep;
  const auto& smp = profile.samples;
  for (const auto& [a, b] : flow_segments(profile)) {
    if (b - a + 1 < kMinSegment) {
      ++rep.insufficient_segments;
      rep.flags.push_back("insufficient samples in segment [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
      continue;
    }
    for (std::size_t j = a + 4; j + 4 <= b; ++j) {
      const auto d = resolved_dv_dt(smp, j);
      if (!(smp[j].H > 0.0) || !d.resolved) {
        ++rep.unresolved;
        continue;
      }
      const double expected = smp[j].B / smp[j].H;
      rep.max_deviation = std::max(rep.max_deviation, std::abs(d.value - expected) / expected);
      ++rep.checked;
    }
  }
  return rep;
}

LipschitzReport lipschitz_bound_check(const FlowProfile& profile, double tol) {
  LipschitzReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const auto& smp = profile.samples;
  for (const auto& [a, b] : flow_segments(profile)) {
    if (b - a + 1 < kMinSegment) {
      rep.flags.push_back("insufficient samples in segment [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
      continue;
    }
    for (std::size_t j = a + 4; j + 4 <= b; ++j) {
      const auto d = resolved_dv_dt(smp, j);
      if (!(smp[j].H > 0.0) || !d.resolved) {
        ++rep.unresolved;
        continue;
      }
      const double lhs = 1.0 / d.value;
      // (int H^2)^(1/2) Area^(-3/2) with H constant on the sphere.
      const double rhs = std::sqrt(smp[j].H * smp[j].H * smp[j].B) * std::pow(smp[j].B, -1.5);
      rep.worst_margin = std::min(rep.worst_margin, (rhs - lhs) / rhs);
      rep.max_equality_gap = std::max(rep.max_equality_gap, std::abs(lhs - rhs) / rhs);
      ++rep.checked;
    }
  }
  for (const auto& ev : profile.jumps) {
    if (ev.initial) continue;
    // dt/dv = 0 inside (v_before, v_after]; the right side is nonnegative.
    const MetricPoint p = profile.metric().at(ev.s_before);
    const double rhs = std::abs(mean_curvature_at(p)) / area_at(p);
    if (!(0.0 <= rhs)) rep.holds = false;
    ++rep.jump_intervals;
  }
  if (rep.checked == 0) rep.worst_margin = 0.0;
  rep.holds = rep.holds && rep.worst_margin >= -tol;
  return rep;
}

GerochReport geroch_check(const FlowProfile& profile, double scal_tol) {
  GerochReport rep;
  const auto& smp = profile.samples;
  const RadialMetric& metric = profile.metric();
  rep.min_scalar_curvature = std::numeric_limits<double>::infinity();
  auto probe = [&](double s) {
    if (!metric.in_interior(s)) return;
    rep.min_scalar_curvature = std::min(rep.min_scalar_curvature, scalar_curvature(metric, s));
  };
  for (std::size_t i = 0; i < smp.size(); ++i) {
    probe(smp[i].s);
    if (i + 1 < smp.size()) probe(0.5 * (smp[i].s + smp[i + 1].s));
  }
  rep.hypothesis_met = rep.min_scalar_curvature >= -scal_tol;

  double scale = 0.0;
  for (const auto& x : smp) scale = std::max(scale, std::abs(x.m));
  rep.min_increment = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < smp.size(); ++i)
    rep.min_increment = std::min(rep.min_increment, smp[i + 1].m - smp[i].m);
  for (const auto& ev : profile.jumps) {
    if (ev.initial) continue;
    const double before = hawking_mass_at(metric.at(ev.s_before));
    const double after = hawking_mass_at(metric.at(ev.s_after));
    rep.min_increment = std::min(rep.min_increment, after - before);
  }
  if (!std::isfinite(rep.min_increment)) rep.min_increment = 0.0;
  rep.nondecreasing = rep.min_increment >= -1e-8 * (1.0 + scale);
  rep.final_mass = smp.empty() ? 0.0 : smp.back().m;
  return rep;
}

}  // namespace imcf
