#include "fdrlim/lfdr_law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdrlim {

LfdrLaw::LfdrLaw(const MixtureModel& model) : model_(model) {
  switch (model.family()) {
    case Family::kUniformStep: {
      // W takes two values: below the cut and on the flat remainder.
      const double c = model.cut();
      const double w_lo = model.lfdr(0.5 * c);
      const double w_hi = model.lfdr(0.5 * (1.0 + c));
      const double mass_lo = model.cdf(Component::kMarginal, c);
      atoms_ = {{w_lo, mass_lo}, {w_hi, 1.0 - mass_lo}};
      break;
    }
    case Family::kGaussianLocation:
      if (model.mu() == 0.0) {
        atoms_ = {{model.pi0(), 1.0}};
        break;
      }
      increasing_ = model.lfdr_increasing_in_x();
      break;
    case Family::kUniformSqrt:
    case Family::kUniformCustom:
      increasing_ = true;
      break;
  }
  if (!atoms_.empty()) {
    cum_.resize(atoms_.size());
    cum_w_.resize(atoms_.size());
    double m = 0.0, wm = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      m += atoms_[k].mass;
      wm += atoms_[k].w * atoms_[k].mass;
      cum_[k] = m;
      cum_w_[k] = wm;
    }
    cum_.back() = 1.0;
  }
}

double LfdrLaw::continuous_region_x(double u) const {
  // The mass-u lower tail of W maps to {x <= q} when W increases in x and
  // to {x >= q} otherwise, with q the matching marginal quantile.
  return model_.quantile(Component::kMarginal, increasing_ ? u : 1.0 - u);
}

double LfdrLaw::a_of_u(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("a_of_u: u outside [0,1]");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return pi0();
  if (has_atoms()) {
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - cum_.begin());
    const double below_w = k > 0 ? cum_w_[k - 1] : 0.0;
    const double below_m = k > 0 ? cum_[k - 1] : 0.0;
    return (below_w + atoms_[k].w * (u - below_m)) / u;
  }
  const double q = continuous_region_x(u);
  const double p0_in = increasing_ ? model_.cdf(Component::kNull, q)
                                   : 1.0 - model_.cdf(Component::kNull, q);
  return pi0() * p0_in / u;
}

double LfdrLaw::b_of_u(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("b_of_u: u outside [0,1]");
  if (u == 1.0) return 0.0;
  if (u == 0.0) return pi1();
  if (has_atoms()) {
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - cum_.begin());
    // (1-w) mass left outside the selection: the partial atom k plus all
    // atoms above it
    double num = (1.0 - atoms_[k].w) * (cum_[k] - u);
    const double tail_m = 1.0 - cum_[k];
    const double tail_wm = cum_w_.back() - cum_w_[k];
    num += tail_m - tail_wm;
    return num / (1.0 - u);
  }
  const double q = continuous_region_x(u);
  const double p1_out = increasing_ ? 1.0 - model_.cdf(Component::kAlt, q)
                                    : model_.cdf(Component::kAlt, q);
  return pi1() * p1_out / (1.0 - u);
}

double LfdrLaw::u_star(double alpha) const {
  if (alpha < 0.0) return 0.0;
  if (alpha >= pi0()) return 1.0;
  if (has_atoms()) {
    if (alpha < atoms_.front().w) return 0.0;
    // a(cum_k) is the running mean of w; find the last k where it stays
    // at or below alpha, then solve a(u) = alpha in the next segment.
    std::size_t k = 0;
    while (k + 1 < atoms_.size() && cum_w_[k + 1] / cum_[k + 1] <= alpha) ++k;
    const double w_next = atoms_[k + 1].w;
    if (alpha >= w_next) return cum_[k + 1];  // only with nonincreasing w; defensive
    return (cum_w_[k] - w_next * cum_[k]) / (alpha - w_next);
  }
  if (alpha <= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (a_of_u(mid) <= alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

LfdrLaw::Threshold LfdrLaw::np_threshold(double alpha) const {
  const double u = u_star(alpha);
  Threshold t;
  if (u <= 0.0) {
    t.reject_none = true;
    return t;
  }
  if (u >= 1.0) {
    t.reject_all = true;
    return t;
  }
  if (has_atoms()) {
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - cum_.begin());
    t.c = atoms_[k].w;
    const double below_m = k > 0 ? cum_[k - 1] : 0.0;
    t.p = (u - below_m) / atoms_[k].mass;
    return t;
  }
  t.c = model_.lfdr(continuous_region_x(u));
  t.p = 0.0;  // ties have probability zero under a continuous law
  return t;
}

std::vector<double> LfdrLaw::knot_alphas() const {
  std::vector<double> alphas;
  if (has_atoms()) {
    alphas.push_back(atoms_.front().w);  // b* jumps where a(0+) lands
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      alphas.push_back(cum_w_[k] / cum_[k]);
    }
  }
  return alphas;
}

}  // namespace fdrlim
