#pragma once

#include <optional>
#include <span>
#include <vector>

namespace fdrlim {

// Kernel density estimate with the quartic (biweight) kernel
// K(u) = (15/16)(1-u^2)^2 on |u| <= 1. Default bandwidth is the
// rule-of-thumb 2.778 * sigma * n^(-1/5) with
// sigma = min(sd, IQR/1.349).
struct KdeFit {
  std::vector<double> sorted_x;
  double bandwidth = 0.0;

  double density_at(double t) const;
};

// Requires n >= 2 when the bandwidth is omitted; an explicit bandwidth
// must be positive.
KdeFit kde(std::span<const double> x, std::optional<double> bandwidth = std::nullopt);

}  // namespace fdrlim
