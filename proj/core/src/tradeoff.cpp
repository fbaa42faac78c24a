#include "fdrlim/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdrlim/stats.hpp"

namespace fdrlim {

namespace {
constexpr double kContactTol = 1e-9;

std::vector<double> merged_grid(const LfdrLaw& law, std::span<const double> grid) {
  std::vector<double> g(grid.begin(), grid.end());
  g.push_back(0.0);
  g.push_back(law.pi0());
  g.push_back(1.0);
  for (double a : law.knot_alphas()) g.push_back(a);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.front() < 0.0 || g.back() > 1.0) {
    throw std::invalid_argument("fnr_star_curve: grid values must lie in [0,1]");
  }
  return g;
}
}  // namespace

std::vector<double> default_alpha_grid(const LfdrLaw& law) {
  std::vector<double> g;
  g.reserve(601);
  for (int k = 0; k <= 600; ++k) g.push_back(static_cast<double>(k) / 600.0);
  return merged_grid(law, g);
}

TradeoffCurve fnr_star_curve(const LfdrLaw& law, std::span<const double> grid) {
  if (grid.size() < 2) throw std::invalid_argument("fnr_star_curve: grid needs >= 2 points");
  TradeoffCurve curve;
  curve.alphas = merged_grid(law, grid);
  curve.mfnr.reserve(curve.alphas.size());
  for (double a : curve.alphas) curve.mfnr.push_back(law.mfnr_star(a));
  std::vector<KnotPoint> pts;
  pts.reserve(curve.alphas.size());
  for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
    pts.push_back({curve.alphas[i], curve.mfnr[i]});
  }
  curve.gcm = gcm_of_points(pts);
  curve.fnr.reserve(curve.alphas.size());
  for (double a : curve.alphas) curve.fnr.push_back(curve.gcm.eval(a));
  return curve;
}

RandomizationSplit randomization_split(const LfdrLaw& law, const TradeoffCurve& curve,
                                       double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("randomization_split: alpha outside (0,1)");
  }
  const double b_star = law.mfnr_star(alpha);
  const double b_hull = curve.gcm.eval(alpha);
  if (b_star - b_hull <= kContactTol) return {alpha, alpha, 1.0};
  const auto br = curve.gcm.bracket(alpha);
  return {curve.gcm.knots()[br.lo].s, curve.gcm.knots()[br.hi].s, br.w};
}

RandomizationSplit randomization_split(const LfdrLaw& law, double alpha,
                                       std::span<const double> grid) {
  std::vector<double> g(grid.begin(), grid.end());
  if (alpha > 0.0 && alpha < 1.0) g.push_back(alpha);  // hull sees b*(alpha) itself
  return randomization_split(law, fnr_star_curve(law, g), alpha);
}

std::vector<ParametricPoint> gaussian_parametric(double mu, double pi0,
                                                 std::span<const double> z_grid) {
  if (!(mu > 0.0)) throw std::invalid_argument("gaussian_parametric: mu must be positive");
  if (!(pi0 > 0.0 && pi0 < 1.0)) {
    throw std::invalid_argument("gaussian_parametric: pi0 outside (0,1)");
  }
  const double pi1 = 1.0 - pi0;
  std::vector<ParametricPoint> pts;
  pts.reserve(z_grid.size());
  for (double z : z_grid) {
    // survival-function form avoids cancellation in the tails
    const double upper = pi0 * normal_sf(z) + pi1 * normal_sf(z - mu);
    const double lower = pi0 * normal_cdf(z) + pi1 * normal_cdf(z - mu);
    ParametricPoint p;
    p.z = z;
    p.mfdr = upper > 0.0 ? pi0 * normal_sf(z) / upper : 0.0;
    p.mfnr = lower > 0.0 ? pi1 * normal_cdf(z - mu) / lower : 0.0;
    pts.push_back(p);
  }
  return pts;
}

double gaussian_parametric_mfnr(double mu, double pi0, double alpha) {
  if (!(mu > 0.0)) throw std::invalid_argument("gaussian_parametric_mfnr: mu must be positive");
  if (!(alpha > 0.0 && alpha < pi0)) {
    throw std::invalid_argument("gaussian_parametric_mfnr: alpha outside (0, pi0)");
  }
  const double pi1 = 1.0 - pi0;
  const auto mfdr_at = [&](double z) {
    const double upper = pi0 * normal_sf(z) + pi1 * normal_sf(z - mu);
    return upper > 0.0 ? pi0 * normal_sf(z) / upper : 0.0;
  };
  // mFDR decreases in z from pi0 to 0
  double lo = -12.0 - mu, hi = 12.0 + mu;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mfdr_at(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double z = 0.5 * (lo + hi);
  const double lower = pi0 * normal_cdf(z) + pi1 * normal_cdf(z - mu);
  return pi1 * normal_cdf(z - mu) / lower;
}

double bh_limit_threshold(const MixtureModel& model, double alpha) {
  if (!model.uniform_null()) {
    throw std::invalid_argument("bh_limit_threshold: defined for uniform-null families only");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("bh_limit_threshold: alpha outside (0,1)");
  }
  const double pi0 = model.pi0();
  const auto ratio = [&](double t) { return pi0 * t / model.cdf(Component::kMarginal, t); };
  if (ratio(1.0) <= alpha) return 1.0;
  const double floor_ratio = pi0 / (pi0 + model.pi1() * model.alt_density_at_zero());
  if (alpha < floor_ratio) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (ratio(mid) <= alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace fdrlim
