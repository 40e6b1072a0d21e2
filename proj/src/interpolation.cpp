#include "imcf/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imcf {

std::vector<std::vector<double>> fd_weights(std::span<const double> nodes, double at,
                                            int max_order) {
  const std::size_t n = nodes.size();
  if (n == 0 || max_order < 0) throw std::invalid_argument("fd_weights: empty stencil");
  const auto m = static_cast<std::size_t>(max_order);
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - at;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - at;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("MonotoneCubic: need at least two matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("MonotoneCubic: abscissae must be strictly increasing");

  slope_.assign(n, 0.0);
  if (n == 2) {
    slope_[0] = slope_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    return;
  }
  const std::size_t width = std::min<std::size_t>(5, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= width / 2 ? i - width / 2 : 0;
    lo = std::min(lo, n - width);
    const auto w = fd_weights(std::span(x_).subspan(lo, width), x_[i], 1);
    double d = 0.0;
    for (std::size_t j = 0; j < width; ++j) d += w[1][j] * y_[lo + j];
    slope_[i] = d;
  }

  // Hyman filter: keep the interpolant monotone wherever the data are. Next
  // to a flat secant the slope is zeroed. At strict extrema the high-order
  // slope is kept; zeroing it would kink the second derivative there.
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? secant[i - 1] : secant[0];
    const double right = i + 1 < n ? secant[i] : secant[n - 2];
    if (left == 0.0 || right == 0.0) {
      slope_[i] = 0.0;
    } else if (left * right > 0.0) {
      double bound = 3.0 * std::min(std::abs(left), std::abs(right));
      // Extended bound near smooth extrema: one-sided parabolic slopes that
      // agree with the local curvature may exceed the plain Hyman limit.
      const double p0 = slope_[i];
      if (i >= 2 && i + 1 < n) {
        const double h1 = x_[i] - x_[i - 1], h2 = x_[i - 1] - x_[i - 2];
        const double pm = (left * (2.0 * h1 + h2) - secant[i - 2] * h1) / (h1 + h2);
        if (p0 * pm > 0.0 && p0 * (left - secant[i - 2]) > 0.0 && p0 * (right - left) > 0.0)
          bound = std::max(bound, 1.5 * std::min(std::abs(p0), std::abs(pm)));
      }
      if (i >= 1 && i + 2 < n) {
        const double h0 = x_[i + 1] - x_[i], h1 = x_[i + 2] - x_[i + 1];
        const double pp = (right * (2.0 * h0 + h1) - secant[i + 1] * h0) / (h0 + h1);
        if (p0 * pp > 0.0 && p0 * (right - left) < 0.0 && p0 * (secant[i + 1] - right) < 0.0)
          bound = std::max(bound, 1.5 * std::min(std::abs(p0), std::abs(pp)));
      }
      if (slope_[i] * left < 0.0) {
        slope_[i] = 0.0;
      } else if (std::abs(slope_[i]) > bound) {
        slope_[i] = std::copysign(bound, left);
      }
    }
  }
}

std::size_t MonotoneCubic::locate(double at) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), at);
  std::size_t cell = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(cell, x_.size() - 2);
}

std::size_t MonotoneCubic::nearest_knot(double at) const {
  const std::size_t cell = locate(at);
  return (at - x_[cell] < x_[cell + 1] - at) ? cell : cell + 1;
}

HermiteValue MonotoneCubic::evaluate_cell(std::size_t cell, double at) const {
  const double h = x_[cell + 1] - x_[cell];
  const double t = (at - x_[cell]) / h;
  const double y0 = y_[cell], y1 = y_[cell + 1];
  const double m0 = slope_[cell] * h, m1 = slope_[cell + 1] * h;
  const double t2 = t * t, t3 = t2 * t;
  const double value = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
                       (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
  const double d1 = ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 +
                     (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * m1) / h;
  const double d2 = ((12 * t - 6) * y0 + (6 * t - 4) * m0 + (-12 * t + 6) * y1 +
                     (6 * t - 2) * m1) / (h * h);
  return {value, d1, d2};
}

HermiteValue MonotoneCubic::evaluate(double at) const {
  if (x_.empty()) throw std::logic_error("MonotoneCubic: empty interpolant");
  return evaluate_cell(locate(at), at);
}

std::pair<double, double> MonotoneCubic::second_derivative_jump(std::size_t k) const {
  const double left = k > 0 ? evaluate_cell(k - 1, x_[k]).d2 : evaluate_cell(0, x_[0]).d2;
  const double right = k + 1 < x_.size() ? evaluate_cell(k, x_[k]).d2 : left;
  return {left, right};
}

}  // namespace imcf
