#include "fdrlim/kde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdrlim/stats.hpp"

namespace fdrlim {

double KdeFit::density_at(double t) const {
  const double h = bandwidth;
  const auto lo = std::lower_bound(sorted_x.begin(), sorted_x.end(), t - h);
  const auto hi = std::upper_bound(lo, sorted_x.end(), t + h);
  double sum = 0.0;
  for (auto it = lo; it != hi; ++it) {
    const double u = (t - *it) / h;
    const double v = 1.0 - u * u;
    if (v > 0.0) sum += v * v;
  }
  return 0.9375 * sum / (static_cast<double>(sorted_x.size()) * h);
}

KdeFit kde(std::span<const double> x, std::optional<double> bandwidth) {
  if (x.empty()) throw std::invalid_argument("kde: empty sample");
  KdeFit fit;
  fit.sorted_x.assign(x.begin(), x.end());
  std::sort(fit.sorted_x.begin(), fit.sorted_x.end());
  if (bandwidth) {
    if (!(*bandwidth > 0.0)) throw std::invalid_argument("kde: bandwidth must be positive");
    fit.bandwidth = *bandwidth;
    return fit;
  }
  if (x.size() < 2) {
    throw std::invalid_argument("kde: n >= 2 required when no bandwidth is given");
  }
  const double sd = sample_sd(fit.sorted_x);
  const double iqr =
      quantile_sorted(fit.sorted_x, 0.75) - quantile_sorted(fit.sorted_x, 0.25);
  double sigma = std::min(sd, iqr / 1.349);
  if (sigma <= 0.0) sigma = sd;
  if (sigma <= 0.0) {
    throw std::invalid_argument("kde: degenerate sample, pass an explicit bandwidth");
  }
  fit.bandwidth = 2.778 * sigma * std::pow(static_cast<double>(x.size()), -0.2);
  return fit;
}

}  // namespace fdrlim
