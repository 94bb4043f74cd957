#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "capsim/errors.hpp"

namespace capsim {

/// Piecewise-linear lookup table ("graphical converter" in stock-flow
/// modelling tools). Exact at breakpoints, linear between them, clamped to
/// the end values outside the breakpoint range.
class TableFunction {
 public:
  struct Point {
    double x;
    double y;
    friend bool operator==(const Point&, const Point&) = default;
  };

  TableFunction() = default;

  explicit TableFunction(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
      throw input_error("table function needs at least 2 breakpoints, got " +
                        std::to_string(points_.size()));
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (!(points_[i - 1].x < points_[i].x)) {
        throw input_error("table function breakpoints must have strictly increasing x (point " +
                          std::to_string(i + 1) + ")");
      }
    }
  }

  TableFunction(std::initializer_list<Point> points)
      : TableFunction(std::vector<Point>(points)) {}

  double operator()(double x) const {
    if (x <= points_.front().x) return points_.front().y;
    if (x >= points_.back().x) return points_.back().y;
    // Find the segment [x_i, x_{i+1}) containing x. x == x_i reproduces y_i
    // exactly; the upper breakpoint is covered as the lower end of the next
    // segment (or by the clamp above for the final one).
    std::size_t i = 0;
    while (x >= points_[i + 1].x) ++i;
    const Point& a = points_[i];
    const Point& b = points_[i + 1];
    return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
  }

  const std::vector<Point>& points() const { return points_; }

  /// Copy with every y multiplied by `factor`. Used by calibration when the
  /// converter scale is a free parameter.
  TableFunction scaled_y(double factor) const {
    std::vector<Point> pts = points_;
    for (Point& p : pts) p.y *= factor;
    return TableFunction(std::move(pts));
  }

  friend bool operator==(const TableFunction&, const TableFunction&) = default;

 private:
  std::vector<Point> points_;
};

}  // namespace capsim
