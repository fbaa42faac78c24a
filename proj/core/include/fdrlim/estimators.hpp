#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdrlim/gcm.hpp"
#include "fdrlim/mixture.hpp"

namespace fdrlim {

using DensityFn = std::function<double(double)>;

// Estimated Lfdr values W-hat_i = min(pi0 f0(x_i) / f-hat(x_i), 1), with
// the empirical selection functionals built on them:
//
//   A-hat(y) = mean of W-hat over {W-hat <= y}   (0 when the set is empty)
//   B-hat(y) = mean of 1-W-hat over {W-hat > y}  (0 when the set is empty)
//
// y-star(alpha) is the largest candidate threshold y in {0, W-hat_i} with
// A-hat(y) <= alpha, and the knot set (A-hat, B-hat) evaluated at the
// distinct thresholds plus (1,0) feeds the convex hull that drives the
// randomized rule.
class LfdrHatVector {
 public:
  static LfdrHatVector from_values(std::vector<double> w);

  const std::vector<double>& values() const { return w_; }
  std::size_t size() const { return w_.size(); }

  double a_hat(double y) const;
  double b_hat(double y) const;
  double y_star(double alpha) const;

  struct HullPoints {
    std::vector<KnotPoint> points;  // (A-hat, B-hat) at 0, distinct values, then (1,0)
    KnotCurve gcm;
  };
  HullPoints b_star_hull() const;

 private:
  std::vector<double> w_;       // estimation order
  std::vector<double> sorted_;  // ascending
  std::vector<double> prefix_;  // prefix_[k] = sum of the k smallest values
};

// f-hat(x_i) == 0 yields W-hat_i = 1.
LfdrHatVector lfdr_hat(double pi0, const DensityFn& f0, const DensityFn& fhat,
                       std::span<const double> x);

// Marginal density estimator selection: "grenander", "kde", "kde(h=<real>)"
// or "oracle" (the true marginal, for calibration runs).
struct EstimatorSpec {
  enum class Kind { kGrenander, kKde, kOracle } kind = Kind::kGrenander;
  std::optional<double> bandwidth;

  std::string to_string() const;
};
EstimatorSpec parse_estimator_spec(const std::string& spec);

// Builds the density estimate for a sample; the oracle kind needs the
// generating model.
DensityFn make_density_estimate(const EstimatorSpec& spec, std::span<const double> x,
                                const MixtureModel* oracle_model);

}  // namespace fdrlim
