#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "imcf/errors.hpp"
#include "imcf/quadrature.hpp"

namespace imcf {

/// Metric coefficients and derivatives at one radial coordinate.
/// The radial coefficient is carried as inv_A = 1/A so that horizons
/// (A -> infinity) stay finite.
struct MetricPoint {
  double s = 0.0;
  double inv_A = 1.0;
  double d_inv_A = 0.0;
  double R = 0.0;
  double dR = 0.0;
  double d2R = 0.0;

  double A() const { return 1.0 / inv_A; }
};

class MetricModel {
 public:
  virtual ~MetricModel() = default;
  virtual MetricPoint at(double s) const = 0;
  /// Estimated jump of R'' at the nearest tabulation knot (0 for closed forms).
  virtual double derivative_noise(double) const { return 0.0; }
};

class VolumeIndex;

/// Warped-product metric g = A(s) ds^2 + R(s)^2 g_{S^2} on [s_min, s_max].
/// Immutable; copies share the underlying model and volume table.
class RadialMetric {
 public:
  enum class Kind { Preset, Tabulated, Glued };

  struct Traits {
    Kind kind = Kind::Preset;
    std::string name;
    std::map<std::string, double> params;
    double s_min = 0.0;
    double s_max = 0.0;
    bool asymptotically_flat = false;
  };

  RadialMetric(std::shared_ptr<const MetricModel> model, Traits traits);

  MetricPoint at(double s) const;
  double A(double s) const { return at(s).A(); }
  double R(double s) const { return at(s).R; }

  double s_min() const { return traits_.s_min; }
  double s_max() const { return traits_.s_max; }
  Kind kind() const { return traits_.kind; }
  const std::string& name() const { return traits_.name; }
  const std::map<std::string, double>& params() const { return traits_.params; }
  bool asymptotically_flat() const { return traits_.asymptotically_flat; }

  /// R vanishes at s_min: volume is measured from a center point.
  bool has_center() const { return has_center_; }
  /// inv_A vanishes at s_min: the inner boundary is a horizon.
  bool has_horizon() const { return has_horizon_; }

  bool contains(double s) const { return s >= s_min() && s <= s_max(); }
  bool in_interior(double s) const { return s > s_min() && s < s_max(); }

  /// Riemannian volume of {s_min <= sigma <= s}.
  double volume(double s) const;
  double volume_between(double a, double b) const;
  /// Inverse of volume(): the coordinate enclosing volume V above s_min.
  double coordinate_at_volume(double V) const;

  double derivative_noise(double s) const { return model_->derivative_noise(s); }
  const MetricModel& model() const { return *model_; }

 private:
  std::shared_ptr<const MetricModel> model_;
  Traits traits_;
  bool has_center_ = false;
  bool has_horizon_ = false;
  std::shared_ptr<const VolumeIndex> volume_;
};

/// Integral of weight(p) * dVol/ds over [a, b], where dVol/ds = 4 pi R^2 sqrt(A).
/// A horizon endpoint singularity is removed by s = s_min + w^2.
QuadratureResult integrate_volume_weighted(const RadialMetric& metric, double a, double b,
                                           const std::function<double(const MetricPoint&)>& weight,
                                           double rel_tol = 1e-12);

RadialMetric make_preset(const std::string& name, const std::map<std::string, double>& params = {});

/// Metric from samples; A and R are interpolated with shape-preserving cubics.
RadialMetric make_tabulated(std::vector<double> s, std::vector<double> A, std::vector<double> R,
                            bool asymptotically_flat = false, std::string name = "tabulated");

/// Samples a metric at n uniformly spaced coordinates and rebuilds it as a table.
RadialMetric tabulate(const RadialMetric& metric, int n, double s_lo, double s_hi);

struct SphereGeometry {
  double s = 0.0;
  double area = 0.0;
  double mean_curvature = 0.0;
  double hawking_mass = 0.0;
  double enclosed_volume = 0.0;
};

SphereGeometry sphere_geometry(const RadialMetric& metric, double s);

double area_at(const MetricPoint& p);
double mean_curvature_at(const MetricPoint& p);
double hawking_mass_at(const MetricPoint& p);

/// Scalar curvature 2(1 - R_x^2)/R^2 - 4 R_xx / R with x the arclength coordinate.
double scalar_curvature(const RadialMetric& metric, double s);
double scalar_curvature_at(const MetricPoint& p);

struct AdmMassResult {
  double mass = 0.0;
  double tail_spread = 0.0;
  std::vector<double> radii;
  std::vector<double> hawking_masses;
};

AdmMassResult adm_mass(const RadialMetric& metric);

struct AFDecaySample {
  double r = 0.0;
  double sigma = 0.0;
  double r_dsigma = 0.0;
  double r2_ddsigma = 0.0;
};

struct AFDecayReport {
  bool passes = false;
  double witnessed_constant = 0.0;
  double inner_constant = 0.0;
  double outer_constant = 0.0;
  std::vector<AFDecaySample> samples;
};

AFDecayReport af_decay_check(const RadialMetric& metric, double r_min, int samples = 48);

struct GluedMetricSpec {
  RadialMetric inner_metric;
  double transition_radius = 0.0;
  double cap_scale = 0.0;
};

/// Degree-5 smoothstep: 0 at x <= 0, 1 at x >= 1, C^2 at both ends.
double smoothstep5(double x);

RadialMetric build_glued_metric(const GluedMetricSpec& spec);

}  // namespace imcf
