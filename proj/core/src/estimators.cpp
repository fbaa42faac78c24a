#include "fdrlim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "fdrlim/errors.hpp"
#include "fdrlim/grenander.hpp"
#include "fdrlim/kde.hpp"

namespace fdrlim {

LfdrHatVector LfdrHatVector::from_values(std::vector<double> w) {
  for (double v : w) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("LfdrHatVector: values must lie in [0,1]");
    }
  }
  LfdrHatVector out;
  out.w_ = std::move(w);
  out.sorted_ = out.w_;
  std::sort(out.sorted_.begin(), out.sorted_.end());
  out.prefix_.assign(out.sorted_.size() + 1, 0.0);
  for (std::size_t k = 0; k < out.sorted_.size(); ++k) {
    out.prefix_[k + 1] = out.prefix_[k] + out.sorted_[k];
  }
  return out;
}

double LfdrHatVector::a_hat(double y) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), y);
  const std::size_t k = static_cast<std::size_t>(it - sorted_.begin());
  if (k == 0) return 0.0;
  return prefix_[k] / static_cast<double>(k);
}

double LfdrHatVector::b_hat(double y) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), y);
  const std::size_t k = static_cast<std::size_t>(it - sorted_.begin());
  const std::size_t m = sorted_.size() - k;
  if (m == 0) return 0.0;
  const double sum_above = prefix_.back() - prefix_[k];
  return (static_cast<double>(m) - sum_above) / static_cast<double>(m);
}

double LfdrHatVector::y_star(double alpha) const {
  // A-hat is nondecreasing over candidate thresholds, so scan the distinct
  // values from above; 0 is always feasible.
  double best = 0.0;
  std::size_t k = sorted_.size();
  while (k > 0) {
    const double y = sorted_[k - 1];
    if (prefix_[k] / static_cast<double>(k) <= alpha) {
      best = y;
      break;
    }
    // skip the rest of this tie group
    while (k > 0 && sorted_[k - 1] == y) --k;
  }
  return best;
}

LfdrHatVector::HullPoints LfdrHatVector::b_star_hull() const {
  if (sorted_.empty()) throw std::invalid_argument("b_star_hull: empty vector");
  HullPoints out;
  out.points.reserve(sorted_.size() + 2);
  out.points.push_back({a_hat(0.0), b_hat(0.0)});
  for (std::size_t k = 0; k < sorted_.size(); ++k) {
    if (k + 1 < sorted_.size() && sorted_[k + 1] == sorted_[k]) continue;
    const std::size_t cnt = k + 1;
    const double a = prefix_[cnt] / static_cast<double>(cnt);
    const std::size_t m = sorted_.size() - cnt;
    const double b =
        m == 0 ? 0.0
               : (static_cast<double>(m) - (prefix_.back() - prefix_[cnt])) / static_cast<double>(m);
    out.points.push_back({a, b});
  }
  out.points.push_back({1.0, 0.0});
  out.gcm = gcm_of_points(out.points);
  return out;
}

LfdrHatVector lfdr_hat(double pi0, const DensityFn& f0, const DensityFn& fhat,
                       std::span<const double> x) {
  if (!(pi0 > 0.0 && pi0 < 1.0)) throw std::invalid_argument("lfdr_hat: pi0 outside (0,1)");
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double denom = fhat(x[i]);
    w[i] = denom > 0.0 ? std::min(pi0 * f0(x[i]) / denom, 1.0) : 1.0;
  }
  return LfdrHatVector::from_values(std::move(w));
}

std::string EstimatorSpec::to_string() const {
  switch (kind) {
    case Kind::kGrenander:
      return "grenander";
    case Kind::kKde:
      if (bandwidth) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "kde(h=%g)", *bandwidth);
        return buf;
      }
      return "kde";
    case Kind::kOracle:
      return "oracle";
  }
  return "";
}

EstimatorSpec parse_estimator_spec(const std::string& spec) {
  EstimatorSpec out;
  if (spec == "grenander") {
    out.kind = EstimatorSpec::Kind::kGrenander;
    return out;
  }
  if (spec == "kde") {
    out.kind = EstimatorSpec::Kind::kKde;
    return out;
  }
  if (spec == "oracle") {
    out.kind = EstimatorSpec::Kind::kOracle;
    return out;
  }
  if (spec.rfind("kde(h=", 0) == 0 && spec.back() == ')') {
    const std::string v = spec.substr(6, spec.size() - 7);
    try {
      std::size_t pos = 0;
      const double h = std::stod(v, &pos);
      if (pos != v.size() || !(h > 0.0)) throw std::invalid_argument("bad h");
      out.kind = EstimatorSpec::Kind::kKde;
      out.bandwidth = h;
      return out;
    } catch (const std::exception&) {
      throw ConfigError("estimator spec '" + spec + "': bandwidth must be a positive real");
    }
  }
  throw ConfigError("unknown estimator '" + spec +
                    "' (expected grenander, kde, kde(h=<real>) or oracle)");
}

DensityFn make_density_estimate(const EstimatorSpec& spec, std::span<const double> x,
                                const MixtureModel* oracle_model) {
  switch (spec.kind) {
    case EstimatorSpec::Kind::kGrenander: {
      auto fit = std::make_shared<GrenanderFit>(grenander(x));
      return [fit](double t) { return fit->density_at(t); };
    }
    case EstimatorSpec::Kind::kKde: {
      auto fit = std::make_shared<KdeFit>(kde(x, spec.bandwidth));
      return [fit](double t) { return fit->density_at(t); };
    }
    case EstimatorSpec::Kind::kOracle: {
      if (oracle_model == nullptr) {
        throw std::invalid_argument("oracle estimator needs the generating model");
      }
      const MixtureModel* m = oracle_model;
      return [m](double t) { return m->density(Component::kMarginal, t); };
    }
  }
  throw std::invalid_argument("make_density_estimate: bad estimator kind");
}

}  // namespace fdrlim
