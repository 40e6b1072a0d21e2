#include "imcf/geometry.hpp"

#include <algorithm>
#include <array>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <set>

#include "imcf/interpolation.hpp"
#include "imcf/quadrature.hpp"

namespace imcf {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------- presets --

class EuclideanModel final : public MetricModel {
 public:
  MetricPoint at(double s) const override { return {s, 1.0, 0.0, s, 1.0, 0.0}; }
};

class SchwarzschildModel final : public MetricModel {
 public:
  explicit SchwarzschildModel(double m) : m_(m) {}
  MetricPoint at(double s) const override {
    return {s, (s - 2.0 * m_) / s, 2.0 * m_ / (s * s), s, 1.0, 0.0};
  }

 private:
  double m_;
};

// phi = 1 + (m/2)(r^2 + b^2)^(-1/2), g = phi^4 (dr^2 + r^2 dOmega^2).
class CoredSchwarzschildModel final : public MetricModel {
 public:
  CoredSchwarzschildModel(double m, double b) : m_(m), b_(b) {}
  MetricPoint at(double r) const override {
    const double q = r * r + b_ * b_;
    const double q12 = std::sqrt(q);
    const double phi = 1.0 + 0.5 * m_ / q12;
    const double dphi = -0.5 * m_ * r / (q * q12);
    const double d2phi = -0.5 * m_ * (1.0 / (q * q12) - 3.0 * r * r / (q * q * q12));
    const double phi2 = phi * phi;
    MetricPoint p;
    p.s = r;
    p.inv_A = 1.0 / (phi2 * phi2);
    p.d_inv_A = -4.0 * dphi / (phi2 * phi2 * phi);
    p.R = phi2 * r;
    p.dR = 2.0 * phi * dphi * r + phi2;
    p.d2R = 2.0 * dphi * dphi * r + 2.0 * phi * d2phi * r + 4.0 * phi * dphi;
    return p;
  }

 private:
  double m_, b_;
};

// Round sphere of radius lambda/2 in arclength form, pole to pole.
class SphereCapModel final : public MetricModel {
 public:
  explicit SphereCapModel(double lambda) : lambda_(lambda) {}
  MetricPoint at(double s) const override {
    const double x = 2.0 * s / lambda_;
    return {s, 1.0, 0.0, 0.5 * lambda_ * std::sin(x), std::cos(x),
            -2.0 / lambda_ * std::sin(x)};
  }

 private:
  double lambda_;
};

class TabulatedModel final : public MetricModel {
 public:
  TabulatedModel(std::vector<double> s, std::vector<double> A, std::vector<double> R)
      : A_(s, std::move(A)), R_(std::move(s), std::move(R)) {}

  MetricPoint at(double s) const override {
    const auto a = A_.evaluate(s);
    const auto r = R_.evaluate(s);
    MetricPoint p;
    p.s = s;
    p.inv_A = 1.0 / a.value;
    p.d_inv_A = -a.d1 / (a.value * a.value);
    p.R = r.value;
    p.dR = r.d1;
    p.d2R = r.d2;
    return p;
  }

  double derivative_noise(double s) const override {
    const auto [left, right] = R_.second_derivative_jump(R_.nearest_knot(s));
    return std::abs(left - right);
  }

 private:
  MonotoneCubic A_, R_;
};

class GluedModel final : public MetricModel {
 public:
  GluedModel(RadialMetric inner, double transition, double lambda)
      : inner_(std::move(inner)), lo_(transition + 5.0), lambda_(lambda) {}

  MetricPoint at(double s) const override {
    if (s <= lo_) return inner_.at(s);

    // Stereographic cap: g_S = psi^2 (ds^2 + s^2 dOmega^2), psi = 1/(1 + s^2/lambda^2).
    const double l2 = lambda_ * lambda_;
    const double u = s * s / l2;
    const double psi = 1.0 / (1.0 + u);
    const double dpsi = -2.0 * s / l2 * psi * psi;
    const double As = psi * psi;
    const double dAs = 2.0 * psi * dpsi;
    const double f = s * psi;
    const double df = (1.0 - u) * psi * psi;
    const double d2f = -(3.0 - u) * psi * psi * psi * 2.0 * s / l2;

    const double x = s - lo_;
    double eta = 0.0, deta = 0.0, d2eta = 0.0;
    if (x < 1.0) {
      eta = 1.0 - smoothstep5(x);
      deta = -30.0 * x * x * (x - 1.0) * (x - 1.0);
      d2eta = -(120.0 * x * x * x - 180.0 * x * x + 60.0 * x);
    }

    double A = 0.0, dA = 0.0, P = 0.0, dP = 0.0, d2P = 0.0;
    if (eta > 0.0) {
      const MetricPoint in = inner_.at(s);
      const double Ai = 1.0 / in.inv_A;
      const double dAi = -in.d_inv_A / (in.inv_A * in.inv_A);
      const double R2 = in.R * in.R;
      const double dR2 = 2.0 * in.R * in.dR;
      const double d2R2 = 2.0 * in.dR * in.dR + 2.0 * in.R * in.d2R;
      A = eta * Ai;
      dA = deta * Ai + eta * dAi;
      P = eta * R2;
      dP = deta * R2 + eta * dR2;
      d2P = d2eta * R2 + 2.0 * deta * dR2 + eta * d2R2;
    }
    const double f2 = f * f, df2 = 2.0 * f * df, d2f2 = 2.0 * df * df + 2.0 * f * d2f;
    A += (1.0 - eta) * As;
    dA += -deta * As + (1.0 - eta) * dAs;
    P += (1.0 - eta) * f2;
    dP += -deta * f2 + (1.0 - eta) * df2;
    d2P += -d2eta * f2 - 2.0 * deta * df2 + (1.0 - eta) * d2f2;

    MetricPoint p;
    p.s = s;
    p.inv_A = 1.0 / A;
    p.d_inv_A = -dA / (A * A);
    p.R = std::sqrt(P);
    p.dR = dP / (2.0 * p.R);
    p.d2R = (0.5 * d2P - p.dR * p.dR) / p.R;
    return p;
  }

 private:
  RadialMetric inner_;
  double lo_, lambda_;
};

double require_positive(const std::map<std::string, double>& params, const std::string& key,
                        double fallback) {
  auto it = params.find(key);
  const double v = it == params.end() ? fallback : it->second;
  if (!(v > 0.0) || !std::isfinite(v))
    throw ConfigError("params." + key, "must be a positive finite number");
  return v;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("params." + key, "unknown parameter for this preset");
  }
}

}  // namespace

// ----------------------------------------------------------- volume index --

// Cumulative volume on a node set clustered toward s_min; partial panels are
// integrated on demand and the inverse uses a bracketed TOMS 748 search.
class VolumeIndex {
 public:
  explicit VolumeIndex(const RadialMetric& metric) {
    constexpr int kNodes = 1024;
    const double lo = metric.s_min(), hi = metric.s_max();
    nodes_.reserve(kNodes + 1);
    for (int k = 0; k <= kNodes; ++k) {
      const double x = static_cast<double>(k) / kNodes;
      nodes_.push_back(lo + (hi - lo) * x * x * x);
    }
    nodes_.back() = hi;
    cumulative_.assign(nodes_.size(), 0.0);
    for (std::size_t k = 1; k < nodes_.size(); ++k)
      cumulative_[k] = cumulative_[k - 1] + segment(metric, nodes_[k - 1], nodes_[k]);
  }

  double volume(const RadialMetric& metric, double s) const {
    const std::size_t k = node_below(s);
    return cumulative_[k] + segment(metric, nodes_[k], s);
  }

  double total() const { return cumulative_.back(); }

  double inverse(const RadialMetric& metric, double V) const {
    if (V <= 0.0) return nodes_.front();
    if (V >= total()) return nodes_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), V);
    const std::size_t k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    const double a = nodes_[k], b = nodes_[k + 1];
    const double base = cumulative_[k];
    auto f = [&](double s) { return base + segment(metric, a, s) - V; };
    const double fa = base - V;
    const double fb = cumulative_[k + 1] - V;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    std::uintmax_t iters = 200;
    auto [x0, x1] = boost::math::tools::toms748_solve(
        f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (x0 + x1);
  }

 private:
  std::size_t node_below(double s) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
    if (it == nodes_.begin()) return 0;
    return std::min(static_cast<std::size_t>(it - nodes_.begin()) - 1, nodes_.size() - 1);
  }

  static double segment(const RadialMetric& metric, double a, double b) {
    if (b <= a) return 0.0;
    return integrate_volume_weighted(metric, a, b, [](const MetricPoint&) { return 1.0; })
        .value;
  }

  std::vector<double> nodes_;
  std::vector<double> cumulative_;
};

RadialMetric::RadialMetric(std::shared_ptr<const MetricModel> model, Traits traits)
    : model_(std::move(model)), traits_(std::move(traits)) {
  if (!(traits_.s_max > traits_.s_min))
    throw ConfigError("domain", "s_max must exceed s_min");
  const MetricPoint lo = model_->at(traits_.s_min);
  has_center_ = std::abs(lo.R) <= 1e-12 * (1.0 + std::abs(lo.dR) * (traits_.s_max - traits_.s_min));
  has_horizon_ = std::abs(lo.inv_A) <= 1e-14;
  volume_ = std::make_shared<const VolumeIndex>(*this);
}

MetricPoint RadialMetric::at(double s) const {
  if (!contains(s) || std::isnan(s))
    throw DomainError("coordinate " + std::to_string(s) + " outside metric domain [" +
                      std::to_string(s_min()) + ", " + std::to_string(s_max()) + "]");
  return model_->at(s);
}

double RadialMetric::volume(double s) const {
  if (!contains(s)) throw DomainError("volume: coordinate outside metric domain");
  return volume_->volume(*this, s);
}

double RadialMetric::volume_between(double a, double b) const { return volume(b) - volume(a); }

double RadialMetric::coordinate_at_volume(double V) const {
  if (V < 0.0 || V > volume_->total() * (1.0 + 1e-14))
    throw DomainError("volume " + std::to_string(V) + " outside attainable range");
  return volume_->inverse(*this, V);
}

QuadratureResult integrate_volume_weighted(const RadialMetric& metric, double a, double b,
                                           const std::function<double(const MetricPoint&)>& weight,
                                           double rel_tol) {
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  auto dvol = [&](double s) {
    const MetricPoint p = metric.at(s);
    return weight(p) * 4.0 * kPi * p.R * p.R / std::sqrt(p.inv_A);
  };
  if (metric.has_horizon() && a <= metric.s_min()) {
    const double s0 = metric.s_min();
    const MetricPoint edge = metric.at(s0);
    auto g = [&](double w) {
      // ds = 2 w dw with w measured from the rounded coordinate, so the ratio
      // w / sqrt(inv_A) stays smooth down to s == s0.
      const double s = s0 + w * w;
      const double d = s - s0;
      const MetricPoint p = metric.at(s);
      if (d <= 0.0 || !(p.inv_A > 0.0))
        return weight(p) * 4.0 * kPi * p.R * p.R * 2.0 / std::sqrt(edge.d_inv_A);
      return weight(p) * 4.0 * kPi * p.R * p.R * 2.0 * std::sqrt(d) / std::sqrt(p.inv_A);
    };
    return integrate(g, 0.0, std::sqrt(b - s0), opt);
  }
  return integrate(dvol, a, b, opt);
}

// ------------------------------------------------------------ constructors --

RadialMetric make_preset(const std::string& name, const std::map<std::string, double>& params) {
  RadialMetric::Traits t;
  t.kind = RadialMetric::Kind::Preset;
  t.name = name;
  if (name == "euclidean") {
    reject_unknown(params, {});
    t.s_min = 0.0;
    t.s_max = 1e4;
    t.asymptotically_flat = true;
    return RadialMetric(std::make_shared<EuclideanModel>(), t);
  }
  if (name == "schwarzschild-areal") {
    reject_unknown(params, {"m"});
    const double m = require_positive(params, "m", 1.0);
    t.params = {{"m", m}};
    t.s_min = 2.0 * m;
    t.s_max = 1e4 * std::max(1.0, m);
    t.asymptotically_flat = true;
    return RadialMetric(std::make_shared<SchwarzschildModel>(m), t);
  }
  if (name == "cored-schwarzschild") {
    reject_unknown(params, {"m", "b"});
    const double m = require_positive(params, "m", 1.0);
    const double b = require_positive(params, "b", 1.0);
    t.params = {{"m", m}, {"b", b}};
    t.s_min = 0.0;
    t.s_max = 1e4 * std::max(1.0, std::max(m, b));
    t.asymptotically_flat = true;
    return RadialMetric(std::make_shared<CoredSchwarzschildModel>(m, b), t);
  }
  if (name == "round-3-sphere-cap") {
    reject_unknown(params, {"lambda"});
    const double lambda = require_positive(params, "lambda", 10.0);
    t.params = {{"lambda", lambda}};
    t.s_min = 0.0;
    t.s_max = 0.5 * kPi * lambda;
    return RadialMetric(std::make_shared<SphereCapModel>(lambda), t);
  }
  if (name == "neck") {
    reject_unknown(params, {"delta", "center", "width"});
    const double delta = require_positive(params, "delta", 0.4);
    const double c = require_positive(params, "center", 3.0);
    const double w = require_positive(params, "width", 0.5);
    if (delta >= 1.0) throw ConfigError("params.delta", "must be below 1");
    constexpr int kSamples = 4096;
    constexpr double kLength = 40.0;
    if (c + 4.0 * w >= kLength) throw ConfigError("params.center", "dip must fit inside [0, 40]");
    std::vector<double> s(kSamples), A(kSamples, 1.0), R(kSamples);
    for (int i = 0; i < kSamples; ++i) {
      s[i] = kLength * i / (kSamples - 1);
      const double z = (s[i] - c) / w;
      R[i] = s[i] * (1.0 - delta * std::exp(-z * z));
    }
    t.kind = RadialMetric::Kind::Tabulated;
    t.params = {{"delta", delta}, {"center", c}, {"width", w}};
    t.s_min = s.front();
    t.s_max = s.back();
    return RadialMetric(
        std::make_shared<TabulatedModel>(std::move(s), std::move(A), std::move(R)), t);
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

RadialMetric make_tabulated(std::vector<double> s, std::vector<double> A, std::vector<double> R,
                            bool asymptotically_flat, std::string name) {
  if (s.size() < 8) throw ConfigError("tabulated.s", "need at least 8 samples");
  if (A.size() != s.size()) throw ConfigError("tabulated.A", "length differs from tabulated.s");
  if (R.size() != s.size()) throw ConfigError("tabulated.R", "length differs from tabulated.s");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || (i > 0 && !(s[i] > s[i - 1])))
      throw ConfigError("tabulated.s", "must be finite and strictly increasing");
    if (!(A[i] > 0.0) || !std::isfinite(A[i]))
      throw ConfigError("tabulated.A", "must be positive and finite");
    const bool edge = i == 0 || i + 1 == s.size();
    if (!std::isfinite(R[i]) || R[i] < 0.0 || (!edge && R[i] == 0.0))
      throw ConfigError("tabulated.R", "must be positive in the interior");
  }
  RadialMetric::Traits t;
  t.kind = RadialMetric::Kind::Tabulated;
  t.name = std::move(name);
  t.s_min = s.front();
  t.s_max = s.back();
  t.asymptotically_flat = asymptotically_flat;
  return RadialMetric(
      std::make_shared<TabulatedModel>(std::move(s), std::move(A), std::move(R)), t);
}

RadialMetric tabulate(const RadialMetric& metric, int n, double s_lo, double s_hi) {
  if (n < 8) throw ConfigError("samples", "need at least 8 samples");
  std::vector<double> s(n), A(n), R(n);
  for (int i = 0; i < n; ++i) {
    s[i] = s_lo + (s_hi - s_lo) * i / (n - 1);
    const MetricPoint p = metric.at(s[i]);
    if (!(p.inv_A > 0.0)) throw DomainError("tabulate: A is infinite at a sample");
    A[i] = 1.0 / p.inv_A;
    R[i] = p.R;
  }
  return make_tabulated(std::move(s), std::move(A), std::move(R), metric.asymptotically_flat(),
                        metric.name() + "-tabulated");
}

// ----------------------------------------------------- pointwise geometry --

double area_at(const MetricPoint& p) { return 4.0 * kPi * p.R * p.R; }

double mean_curvature_at(const MetricPoint& p) {
  return 2.0 * p.dR * std::sqrt(std::max(p.inv_A, 0.0)) / p.R;
}

// sqrt(area)/(16 pi)^(3/2) (16 pi - H^2 area) reduces to (R/2)(1 - R'^2/A).
double hawking_mass_at(const MetricPoint& p) {
  return 0.5 * p.R * (1.0 - p.inv_A * p.dR * p.dR);
}

SphereGeometry sphere_geometry(const RadialMetric& metric, double s) {
  const MetricPoint p = metric.at(s);
  if (!(p.R > 0.0)) throw DomainError("sphere_geometry: degenerate sphere (R = 0)");
  SphereGeometry g;
  g.s = s;
  g.area = area_at(p);
  g.mean_curvature = mean_curvature_at(p);
  g.hawking_mass = hawking_mass_at(p);
  g.enclosed_volume = metric.volume(s);
  return g;
}

double scalar_curvature_at(const MetricPoint& p) {
  const double a = p.inv_A;
  return 2.0 * (1.0 - a * p.dR * p.dR) / (p.R * p.R) -
         4.0 * (a * p.d2R + 0.5 * p.dR * p.d_inv_A) / p.R;
}

double scalar_curvature(const RadialMetric& metric, double s) {
  if (!metric.in_interior(s)) throw DomainError("scalar_curvature: coordinate not interior");
  const MetricPoint p = metric.at(s);
  const double noise = metric.derivative_noise(s);
  if (noise > 0.0) {
    const double scale = std::abs(p.d2R) + std::abs(p.dR) / p.R + 1.0 / p.R;
    if (noise > 0.05 * scale)
      throw NonSmoothDataError(noise, "scalar_curvature: tabulated data too rough near s = " +
                                          std::to_string(s) + " (R'' jump " +
                                          std::to_string(noise) + ")");
  }
  return scalar_curvature_at(p);
}

// ------------------------------------------------------------------- ADM --

AdmMassResult adm_mass(const RadialMetric& metric) {
  if (!metric.asymptotically_flat())
    throw DomainError("adm_mass: metric is not declared asymptotically flat");
  const auto af = af_decay_check(metric, metric.s_max() / 64.0);
  if (!af.passes) throw DomainError("adm_mass: AF decay check failed");

  constexpr int K = 6;
  AdmMassResult out;
  const double s_hi = 0.5 * metric.s_max();
  for (int k = 0; k < K; ++k) {
    const double s = s_hi / std::ldexp(1.0, k);
    out.radii.push_back(s);
    out.hawking_masses.push_back(hawking_mass_at(metric.at(s)));
  }
  // Neville's scheme in x = 1/rho, evaluated at x = 0.
  std::vector<double> P = out.hawking_masses;
  double previous = P[0];
  for (int level = 1; level < K; ++level) {
    for (int i = 0; i + level < K; ++i) {
      const double xi = 1.0 / out.radii[i], xj = 1.0 / out.radii[i + level];
      P[i] = (xj * P[i] - xi * P[i + 1]) / (xj - xi);
    }
    if (level == K - 2) previous = P[0];
  }
  out.mass = P[0];
  out.tail_spread = std::abs(P[0] - previous);
  if (!(out.tail_spread <= 1e-6 * (1.0 + std::abs(out.mass))))
    throw NumericalError("adm_mass: extrapolation did not settle (tail spread " +
                         std::to_string(out.tail_spread) + ")");
  return out;
}

// ------------------------------------------------------------- AF decay --

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 sigma_at(const RadialMetric& metric, const std::array<double, 3>& x) {
  const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  const MetricPoint p = metric.at(rho);
  const double radial = 1.0 / p.inv_A - 1.0;
  const double ratio = p.R / rho;
  const double tangential = ratio * ratio - 1.0;
  Mat3 s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double nn = x[i] * x[j] / (rho * rho);
      s[i][j] = radial * nn + tangential * ((i == j ? 1.0 : 0.0) - nn);
    }
  return s;
}

double frobenius(const Mat3& m) {
  double sum = 0.0;
  for (const auto& row : m)
    for (double v : row) sum += v * v;
  return std::sqrt(sum);
}

}  // namespace

AFDecayReport af_decay_check(const RadialMetric& metric, double r_min, int samples) {
  const double r_max = metric.s_max() / 1.05;
  if (!metric.in_interior(r_min) || r_min * 0.96 <= metric.s_min())
    throw DomainError("af_decay_check: r_min must lie inside the domain");
  if (metric.s_max() < 4.0 * r_min)
    throw DomainError("af_decay_check: domain too short to sample (need s_max >= 4 r_min)");
  samples = std::max(samples, 4);

  const std::array<double, 3> dir{1.0 / std::sqrt(14.0), 2.0 / std::sqrt(14.0),
                                  3.0 / std::sqrt(14.0)};
  AFDecayReport report;
  std::vector<double> constants;
  for (int k = 0; k < samples; ++k) {
    const double r = r_min * std::pow(r_max / r_min, static_cast<double>(k) / (samples - 1));
    const double h = 0.02 * r;
    std::array<double, 3> x{r * dir[0], r * dir[1], r * dir[2]};
    auto shifted = [&](int a, double da, int b, double db) {
      auto y = x;
      y[a] += da;
      if (b >= 0) y[b] += db;
      return sigma_at(metric, y);
    };
    const Mat3 s0 = sigma_at(metric, x);
    double d1 = 0.0, d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const Mat3 p1 = shifted(a, h, -1, 0), m1 = shifted(a, -h, -1, 0);
      const Mat3 p2 = shifted(a, 2 * h, -1, 0), m2 = shifted(a, -2 * h, -1, 0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double g = (-p2[i][j] + 8 * p1[i][j] - 8 * m1[i][j] + m2[i][j]) / (12 * h);
          const double gg =
              (-p2[i][j] + 16 * p1[i][j] - 30 * s0[i][j] + 16 * m1[i][j] - m2[i][j]) /
              (12 * h * h);
          d1 += g * g;
          d2 += gg * gg;
        }
      for (int b = a + 1; b < 3; ++b) {
        const Mat3 pp = shifted(a, h, b, h), pm = shifted(a, h, b, -h);
        const Mat3 mp = shifted(a, -h, b, h), mm = shifted(a, -h, b, -h);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const double gg = (pp[i][j] - pm[i][j] - mp[i][j] + mm[i][j]) / (4 * h * h);
            d2 += 2.0 * gg * gg;
          }
      }
    }
    AFDecaySample smp{r, frobenius(s0), r * std::sqrt(d1), r * r * std::sqrt(d2)};
    report.samples.push_back(smp);
    constants.push_back(r * (smp.sigma + smp.r_dsigma + smp.r2_ddsigma));
  }
  const std::size_t half = constants.size() / 2;
  report.inner_constant = *std::max_element(constants.begin(), constants.begin() + half);
  report.outer_constant = *std::max_element(constants.begin() + half, constants.end());
  report.witnessed_constant = std::max(report.inner_constant, report.outer_constant);
  report.passes = std::isfinite(report.witnessed_constant) &&
                  report.outer_constant <= 2.0 * report.inner_constant;
  return report;
}

// ------------------------------------------------------------------ glue --

double smoothstep5(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

RadialMetric build_glued_metric(const GluedMetricSpec& spec) {
  if (!(spec.cap_scale > 0.0)) throw ConfigError("cap_scale", "must be positive");
  if (!(spec.transition_radius > 0.0)) throw ConfigError("transition_radius", "must be positive");
  const RadialMetric& inner = spec.inner_metric;
  if (inner.s_max() < spec.transition_radius + 6.0 || inner.s_min() > spec.transition_radius + 5.0)
    throw DomainError("build_glued_metric: transition band outside the inner metric domain");
  RadialMetric::Traits t;
  t.kind = RadialMetric::Kind::Glued;
  t.name = "glued";
  t.params = {{"transition_radius", spec.transition_radius}, {"cap_scale", spec.cap_scale}};
  t.s_min = inner.s_min();
  // The cap closes only as s -> infinity in these coordinates; truncate where
  // the areal radius has shrunk by six orders of magnitude.
  t.s_max = std::max(1e6 * spec.cap_scale, spec.transition_radius + 12.0);
  return RadialMetric(
      std::make_shared<GluedModel>(inner, spec.transition_radius, spec.cap_scale), t);
}

}  // namespace imcf
