#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace imcf {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int max_intervals = 4000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_panel(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |I|). Endpoints are never
/// evaluated, so integrable endpoint singularities are tolerated.
template <class F>
QuadratureResult integrate(const F& f, double a, double b,
                           const QuadratureOptions& opt = {}) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gauss_kronrod_panel(f, a, b));
  double total = panels.top().value;
  double error = panels.top().error;
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (error <= target) {
      out.converged = true;
      break;
    }
    if (static_cast<int>(panels.size()) >= opt.max_intervals) break;
    const detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    panels.pop();
    const auto left = detail::gauss_kronrod_panel(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  double value = 0.0, err = 0.0;
  out.intervals = static_cast<int>(panels.size());
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  out.value = sign * value;
  out.abs_error = err;
  return out;
}

/// Integrates over consecutive breakpoints, summing values and error estimates.
template <class F>
QuadratureResult integrate_piecewise(const F& f, std::span<const double> breaks,
                                     const QuadratureOptions& opt = {}) {
  QuadratureResult out;
  out.converged = true;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    const auto piece = integrate(f, breaks[i], breaks[i + 1], opt);
    out.value += piece.value;
    out.abs_error += piece.abs_error;
    out.intervals += piece.intervals;
    out.converged = out.converged && piece.converged;
  }
  return out;
}

}  // namespace imcf
