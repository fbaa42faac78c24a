#include "fdrlim/gcm.hpp"

#include <algorithm>
#include <stdexcept>

namespace fdrlim {

namespace {
constexpr double kChordTol = 1e-12;
}

KnotCurve::KnotCurve(std::vector<KnotPoint> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw std::invalid_argument("KnotCurve: need at least 2 knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].s > knots_[i - 1].s)) {
      throw std::invalid_argument("KnotCurve: knot s values must be strictly increasing");
    }
  }
}

double KnotCurve::eval(double s) const {
  if (s < s_min() || s > s_max()) throw std::out_of_range("KnotCurve::eval: s outside range");
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), s,
                                   [](double v, const KnotPoint& k) { return v < k.s; });
  if (it == knots_.end()) return knots_.back().t;
  const std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
  if (hi == 0) return knots_.front().t;
  const KnotPoint& a = knots_[hi - 1];
  const KnotPoint& b = knots_[hi];
  const double w = (s - a.s) / (b.s - a.s);
  return a.t + w * (b.t - a.t);
}

KnotCurve::Bracket KnotCurve::bracket(double s) const {
  if (s < s_min() || s >= s_max()) {
    throw std::out_of_range("KnotCurve::bracket: s outside [s_min, s_max)");
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), s,
                                   [](double v, const KnotPoint& k) { return v < k.s; });
  const std::size_t lo = static_cast<std::size_t>(it - knots_.begin()) - 1;
  const KnotPoint& a = knots_[lo];
  const KnotPoint& b = knots_[lo + 1];
  return Bracket{lo, lo + 1, (b.s - s) / (b.s - a.s)};
}

KnotCurve gcm_of_points(std::span<const KnotPoint> points) {
  if (points.size() < 2) throw std::invalid_argument("gcm_of_points: need at least 2 points");
  // collapse tied s to the smallest t
  std::vector<KnotPoint> pts;
  pts.reserve(points.size());
  for (const KnotPoint& p : points) {
    if (!pts.empty()) {
      if (p.s < pts.back().s) {
        throw std::invalid_argument("gcm_of_points: s values must be nondecreasing");
      }
      if (p.s == pts.back().s) {
        pts.back().t = std::min(pts.back().t, p.t);
        continue;
      }
    }
    pts.push_back(p);
  }
  if (pts.size() < 2) throw std::invalid_argument("gcm_of_points: need 2 distinct s values");

  // Monotone chain for the lower hull. A stacked point is discarded when it
  // lies on or above the chord joining its neighbours (within kChordTol).
  std::vector<KnotPoint> hull;
  hull.reserve(pts.size());
  for (const KnotPoint& p : pts) {
    while (hull.size() >= 2) {
      const KnotPoint& o = hull[hull.size() - 2];
      const KnotPoint& a = hull.back();
      const double chord = o.t + (p.t - o.t) * ((a.s - o.s) / (p.s - o.s));
      if (a.t >= chord - kChordTol) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return KnotCurve(std::move(hull));
}

}  // namespace fdrlim
