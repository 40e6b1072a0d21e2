#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace imcf {

/// Finite-difference weights for the derivatives 0..max_order at `at`,
/// built on arbitrary distinct nodes (Fornberg's recursion).
/// Result is indexed as weights[order][node].
std::vector<std::vector<double>> fd_weights(std::span<const double> nodes, double at,
                                            int max_order);

struct HermiteValue {
  double value;
  double d1;
  double d2;
};

/// Shape-preserving piecewise cubic Hermite interpolant.
///
/// Knot slopes come from fourth-order finite differences and are then passed
/// through Hyman's monotonicity filter, so monotone data yield a monotone
/// interpolant while smooth data keep O(h^4) accuracy.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double at) const { return evaluate(at).value; }
  HermiteValue evaluate(double at) const;

  /// Second derivative from the left and right cells at knot k.
  std::pair<double, double> second_derivative_jump(std::size_t k) const;

  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }
  std::size_t nearest_knot(double at) const;
  bool empty() const { return x_.empty(); }

 private:
  HermiteValue evaluate_cell(std::size_t cell, double at) const;
  std::size_t locate(double at) const;

  std::vector<double> x_, y_, slope_;
};

}  // namespace imcf
