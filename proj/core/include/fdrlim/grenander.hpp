#pragma once

#include <span>
#include <vector>

#include "fdrlim/gcm.hpp"

namespace fdrlim {

// Decreasing density estimate on (0,1]: the slopes of the least concave
// majorant of the empirical CDF, anchored at (0,0). Constant between
// majorant knots, left-continuous at them, zero beyond the largest
// observation.
struct GrenanderFit {
  KnotCurve majorant;          // of the empirical CDF
  std::vector<double> slopes;  // one per majorant segment, strictly decreasing

  double density_at(double x) const;
};

// x values must lie in (0,1); ties are allowed. n >= 1.
GrenanderFit grenander(std::span<const double> x);

}  // namespace fdrlim
