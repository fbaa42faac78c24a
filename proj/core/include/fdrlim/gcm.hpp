#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdrlim {

struct KnotPoint {
  double s = 0.0;
  double t = 0.0;
};

// Piecewise linear function given by knots with strictly increasing s.
class KnotCurve {
 public:
  KnotCurve() = default;
  explicit KnotCurve(std::vector<KnotPoint> knots);

  const std::vector<KnotPoint>& knots() const { return knots_; }
  std::size_t size() const { return knots_.size(); }
  double s_min() const { return knots_.front().s; }
  double s_max() const { return knots_.back().s; }

  // Linear interpolation; throws std::out_of_range outside [s_min, s_max].
  double eval(double s) const;

  // Locates s in the half-open segment [s_lo, s_hi) and returns the weight
  // w = (s_hi - s) / (s_hi - s_lo) of the left knot, so w = 1 exactly at a
  // knot. Throws std::out_of_range when s < s_min or s >= s_max.
  struct Bracket {
    std::size_t lo = 0;
    std::size_t hi = 0;
    double w = 1.0;
  };
  Bracket bracket(double s) const;

 private:
  std::vector<KnotPoint> knots_;
};

// Greatest convex minorant of a point cloud: the lower convex hull, as a
// function of s. Input points must have nondecreasing s (ties allowed and
// collapsed to the smallest t); at least two distinct s values required.
// Points within 1e-12 vertical distance of a hull chord are dropped, so
// the knot list has strictly increasing slopes.
KnotCurve gcm_of_points(std::span<const KnotPoint> points);

}  // namespace fdrlim
