#include "fdrlim/grenander.hpp"

#include <algorithm>
#include <stdexcept>

namespace fdrlim {

double GrenanderFit::density_at(double x) const {
  if (!(x > 0.0)) throw std::domain_error("GrenanderFit::density_at: x must be positive");
  const auto& ks = majorant.knots();
  if (x > ks.back().s) return 0.0;
  // x in (s_{k-1}, s_k] gets the slope of the segment ending at s_k
  const auto it = std::lower_bound(ks.begin(), ks.end(), x,
                                   [](const KnotPoint& k, double v) { return k.s < v; });
  const std::size_t hi = static_cast<std::size_t>(it - ks.begin());
  return slopes[hi == 0 ? 0 : hi - 1];
}

GrenanderFit grenander(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("grenander: empty sample");
  std::vector<double> xs(x.begin(), x.end());
  std::sort(xs.begin(), xs.end());
  if (!(xs.front() > 0.0 && xs.back() < 1.0)) {
    throw std::domain_error("grenander: sample values must lie in (0,1)");
  }
  const double n = static_cast<double>(xs.size());
  // Least concave majorant of the ECDF = negated lower hull of the
  // negated CDF points; the tie rule (min of -t) keeps the top CDF value
  // at duplicated observations.
  std::vector<KnotPoint> pts;
  pts.reserve(xs.size() + 1);
  pts.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    pts.push_back({xs[i], -(static_cast<double>(i + 1) / n)});
  }
  KnotCurve hull = gcm_of_points(pts);
  std::vector<KnotPoint> knots = hull.knots();
  for (KnotPoint& k : knots) k.t = -k.t;

  GrenanderFit fit;
  fit.slopes.reserve(knots.size() - 1);
  for (std::size_t i = 1; i < knots.size(); ++i) {
    fit.slopes.push_back((knots[i].t - knots[i - 1].t) / (knots[i].s - knots[i - 1].s));
  }
  fit.majorant = KnotCurve(std::move(knots));
  return fit;
}

}  // namespace fdrlim
