#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fdrlim/rng.hpp"

namespace fdrlim {

// Two-group mixture: a hypothesis is null with probability pi0 and its
// observation is drawn from f0, otherwise from f1. Four families:
//
//   gaussian(mu=m)   f0 = N(0,1), f1 = N(m,1), support R
//   usqrt            f0 = U(0,1), f1(x) = 1/sqrt(x) - 1, support (0,1)
//   ustep(cut=c)     f0 = U(0,1), f1 = (1/c) on (0,c), support (0,1)
//   ucustom(file=p)  f0 = U(0,1), f1 tabulated strictly decreasing density
//
// Local false discovery rate: lfdr(x) = pi0 f0(x) / f(x), f the marginal.

enum class Family { kGaussianLocation, kUniformSqrt, kUniformStep, kUniformCustom };

enum class Component { kNull, kAlt, kMarginal };

struct LabeledSample {
  std::vector<std::uint8_t> theta;
  std::vector<double> x;
};

class MixtureModel {
 public:
  static MixtureModel gaussian_location(double pi0, double mu);
  static MixtureModel uniform_sqrt(double pi0);
  static MixtureModel uniform_step(double pi0, double cut);
  // table: (x, f1(x)) knots, x ascending from 0 to 1, values strictly
  // decreasing and nonnegative, trapezoid integral within 1e-6 of 1.
  static MixtureModel uniform_custom(double pi0, std::vector<std::pair<double, double>> table);

  double pi0() const { return pi0_; }
  double pi1() const { return 1.0 - pi0_; }
  Family family() const { return family_; }
  double mu() const { return mu_; }
  double cut() const { return cut_; }
  bool uniform_null() const { return family_ != Family::kGaussianLocation; }

  // Throws std::domain_error when x is outside the support.
  double density(Component which, double x) const;
  double lfdr(double x) const;

  double cdf(Component which, double x) const;
  // Inverse marginal CDF; u in [0,1]. For the Gaussian family the
  // endpoints are clamped to +/-inf.
  double quantile(Component which, double u) const;

  // Height of the alternative density as x -> 0+ (uniform-null families;
  // +inf for usqrt). Used for the BH threshold window.
  double alt_density_at_zero() const;

  // True when lfdr is nondecreasing in x over the support.
  bool lfdr_increasing_in_x() const { return family_ != Family::kGaussianLocation || mu_ < 0.0; }

  LabeledSample sample(std::size_t n, RngStream& rng) const;

  std::string spec_string() const;  // grammar form, e.g. "ustep(cut=0.5)"

 private:
  MixtureModel() = default;

  double alt_density(double x) const;
  double alt_cdf(double x) const;
  double alt_quantile(double u) const;

  Family family_ = Family::kUniformStep;
  double pi0_ = 0.5;
  double mu_ = 0.0;
  double cut_ = 0.5;
  // ucustom: density knots and cumulative CDF at knots
  std::vector<double> tab_x_, tab_f_, tab_cdf_;
};

// Parses the model grammar above; pi0 arrives separately (config key or
// --pi0 flag). Throws ConfigError naming the offending field.
MixtureModel parse_model_spec(const std::string& spec, double pi0);

}  // namespace fdrlim
