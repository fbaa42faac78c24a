#include "fdrlim/mixture.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fdrlim/errors.hpp"
#include "fdrlim/stats.hpp"

namespace fdrlim {

namespace {

void check_pi0(double pi0) {
  if (!(pi0 > 0.0 && pi0 < 1.0)) throw std::invalid_argument("pi0 must lie in (0,1)");
}

void check_unit_open(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error(std::string(what) + ": x outside the support (0,1)");
  }
}

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

MixtureModel MixtureModel::gaussian_location(double pi0, double mu) {
  check_pi0(pi0);
  if (!std::isfinite(mu)) throw std::invalid_argument("gaussian: mu must be finite");
  MixtureModel m;
  m.family_ = Family::kGaussianLocation;
  m.pi0_ = pi0;
  m.mu_ = mu;
  return m;
}

MixtureModel MixtureModel::uniform_sqrt(double pi0) {
  check_pi0(pi0);
  MixtureModel m;
  m.family_ = Family::kUniformSqrt;
  m.pi0_ = pi0;
  return m;
}

MixtureModel MixtureModel::uniform_step(double pi0, double cut) {
  check_pi0(pi0);
  if (!(cut > 0.0 && cut < 1.0)) throw std::invalid_argument("ustep: cut must lie in (0,1)");
  MixtureModel m;
  m.family_ = Family::kUniformStep;
  m.pi0_ = pi0;
  m.cut_ = cut;
  return m;
}

MixtureModel MixtureModel::uniform_custom(double pi0,
                                          std::vector<std::pair<double, double>> table) {
  check_pi0(pi0);
  if (table.size() < 2) throw std::invalid_argument("ucustom: table needs at least 2 knots");
  const double eps = 1e-9;
  if (std::fabs(table.front().first) > eps || std::fabs(table.back().first - 1.0) > eps) {
    throw std::invalid_argument("ucustom: table must span x=0 to x=1");
  }
  table.front().first = 0.0;
  table.back().first = 1.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].second < 0.0) throw std::invalid_argument("ucustom: negative density value");
    if (i > 0) {
      if (!(table[i].first > table[i - 1].first)) {
        throw std::invalid_argument("ucustom: x knots must be strictly increasing");
      }
      if (!(table[i].second < table[i - 1].second)) {
        throw std::invalid_argument("ucustom: density must be strictly decreasing");
      }
    }
  }
  MixtureModel m;
  m.family_ = Family::kUniformCustom;
  m.pi0_ = pi0;
  m.tab_x_.reserve(table.size());
  m.tab_f_.reserve(table.size());
  for (auto& [x, f] : table) {
    m.tab_x_.push_back(x);
    m.tab_f_.push_back(f);
  }
  m.tab_cdf_.assign(table.size(), 0.0);
  for (std::size_t i = 1; i < table.size(); ++i) {
    const double dx = m.tab_x_[i] - m.tab_x_[i - 1];
    m.tab_cdf_[i] = m.tab_cdf_[i - 1] + 0.5 * (m.tab_f_[i] + m.tab_f_[i - 1]) * dx;
  }
  if (std::fabs(m.tab_cdf_.back() - 1.0) > 1e-6) {
    throw std::invalid_argument("ucustom: density integrates to " + fmt_real(m.tab_cdf_.back()) +
                                ", expected 1 within 1e-6");
  }
  return m;
}

double MixtureModel::alt_density(double x) const {
  switch (family_) {
    case Family::kGaussianLocation:
      return normal_pdf(x - mu_);
    case Family::kUniformSqrt:
      return 1.0 / std::sqrt(x) - 1.0;
    case Family::kUniformStep:
      return x < cut_ ? 1.0 / cut_ : 0.0;
    case Family::kUniformCustom: {
      const auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
      const std::size_t k = static_cast<std::size_t>(it - tab_x_.begin());
      if (k == 0) return tab_f_.front();
      if (k >= tab_x_.size()) return tab_f_.back();
      const double w = (x - tab_x_[k - 1]) / (tab_x_[k] - tab_x_[k - 1]);
      return tab_f_[k - 1] + w * (tab_f_[k] - tab_f_[k - 1]);
    }
  }
  return 0.0;
}

double MixtureModel::density(Component which, double x) const {
  if (family_ == Family::kGaussianLocation) {
    if (!std::isfinite(x)) throw std::domain_error("density: x must be finite");
    switch (which) {
      case Component::kNull:
        return normal_pdf(x);
      case Component::kAlt:
        return alt_density(x);
      case Component::kMarginal:
        return pi0_ * normal_pdf(x) + pi1() * alt_density(x);
    }
  }
  check_unit_open(x, "density");
  switch (which) {
    case Component::kNull:
      return 1.0;
    case Component::kAlt:
      return alt_density(x);
    case Component::kMarginal:
      return pi0_ + pi1() * alt_density(x);
  }
  return 0.0;
}

double MixtureModel::lfdr(double x) const {
  if (family_ == Family::kGaussianLocation) {
    if (!std::isfinite(x)) throw std::domain_error("lfdr: x must be finite");
    // pi0 f0 / (pi0 f0 + pi1 f1) with f1/f0 = exp(mu x - mu^2/2)
    const double ratio = std::exp(mu_ * x - 0.5 * mu_ * mu_);
    return pi0_ / (pi0_ + pi1() * ratio);
  }
  check_unit_open(x, "lfdr");
  return pi0_ / (pi0_ + pi1() * alt_density(x));
}

double MixtureModel::alt_cdf(double x) const {
  switch (family_) {
    case Family::kGaussianLocation:
      return normal_cdf(x - mu_);
    case Family::kUniformSqrt:
      return 2.0 * std::sqrt(x) - x;
    case Family::kUniformStep:
      return std::min(x / cut_, 1.0);
    case Family::kUniformCustom: {
      const auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
      const std::size_t k = static_cast<std::size_t>(it - tab_x_.begin());
      if (k == 0) return 0.0;
      if (k >= tab_x_.size()) return 1.0;
      const double d = x - tab_x_[k - 1];
      const double slope = (tab_f_[k] - tab_f_[k - 1]) / (tab_x_[k] - tab_x_[k - 1]);
      return tab_cdf_[k - 1] + tab_f_[k - 1] * d + 0.5 * slope * d * d;
    }
  }
  return 0.0;
}

double MixtureModel::cdf(Component which, double x) const {
  if (family_ != Family::kGaussianLocation) x = std::clamp(x, 0.0, 1.0);
  switch (which) {
    case Component::kNull:
      return family_ == Family::kGaussianLocation ? normal_cdf(x) : x;
    case Component::kAlt:
      return alt_cdf(x);
    case Component::kMarginal:
      return pi0_ * cdf(Component::kNull, x) + pi1() * alt_cdf(x);
  }
  return 0.0;
}

double MixtureModel::alt_quantile(double u) const {
  switch (family_) {
    case Family::kGaussianLocation:
      return mu_ + normal_quantile(u);
    case Family::kUniformSqrt: {
      // F1(x) = 2 sqrt(x) - x: invert the quadratic in r = sqrt(x)
      const double r = 1.0 - std::sqrt(1.0 - u);
      return r * r;
    }
    case Family::kUniformStep:
      return u * cut_;
    case Family::kUniformCustom: {
      const auto it = std::upper_bound(tab_cdf_.begin(), tab_cdf_.end(), u);
      std::size_t k = static_cast<std::size_t>(it - tab_cdf_.begin());
      if (k == 0) k = 1;
      if (k >= tab_cdf_.size()) return 1.0;
      const double slope = (tab_f_[k] - tab_f_[k - 1]) / (tab_x_[k] - tab_x_[k - 1]);
      const double b = tab_f_[k - 1];
      const double rem = u - tab_cdf_[k - 1];
      const double disc = std::max(b * b + 2.0 * slope * rem, 0.0);
      const double d = 2.0 * rem / (b + std::sqrt(disc));
      return tab_x_[k - 1] + d;
    }
  }
  return 0.0;
}

double MixtureModel::quantile(Component which, double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile: u outside [0,1]");
  if (which == Component::kNull) {
    if (family_ == Family::kGaussianLocation) {
      if (u == 0.0) return -std::numeric_limits<double>::infinity();
      if (u == 1.0) return std::numeric_limits<double>::infinity();
      return normal_quantile(u);
    }
    return u;
  }
  if (which == Component::kAlt) {
    if (family_ == Family::kGaussianLocation) {
      if (u == 0.0) return -std::numeric_limits<double>::infinity();
      if (u == 1.0) return std::numeric_limits<double>::infinity();
    }
    return alt_quantile(u);
  }
  // marginal
  switch (family_) {
    case Family::kGaussianLocation: {
      if (u == 0.0) return -std::numeric_limits<double>::infinity();
      if (u == 1.0) return std::numeric_limits<double>::infinity();
      double lo = -45.0 - std::fabs(mu_);
      double hi = 45.0 + std::fabs(mu_);
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(Component::kMarginal, mid) < u) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    case Family::kUniformSqrt: {
      // F(x) = (pi0 - pi1) x + 2 pi1 sqrt(x); stable root in r = sqrt(x)
      const double p1 = pi1();
      const double disc = std::max(p1 * p1 + (pi0_ - p1) * u, 0.0);
      const double r = u / (p1 + std::sqrt(disc));
      return r * r;
    }
    case Family::kUniformStep: {
      const double f_at_cut = pi0_ * cut_ + pi1();
      if (u <= f_at_cut) return u / (pi0_ + pi1() / cut_);
      return (u - pi1()) / pi0_;
    }
    case Family::kUniformCustom: {
      // marginal CDF at knots, then quadratic within the segment
      std::size_t k = 1;
      while (k + 1 < tab_x_.size() && pi0_ * tab_x_[k] + pi1() * tab_cdf_[k] < u) ++k;
      const double base = pi0_ * tab_x_[k - 1] + pi1() * tab_cdf_[k - 1];
      const double slope = pi1() * (tab_f_[k] - tab_f_[k - 1]) / (tab_x_[k] - tab_x_[k - 1]);
      const double b = pi0_ + pi1() * tab_f_[k - 1];
      const double rem = u - base;
      if (rem <= 0.0) return tab_x_[k - 1];
      const double disc = std::max(b * b + 2.0 * slope * rem, 0.0);
      const double d = 2.0 * rem / (b + std::sqrt(disc));
      return std::min(tab_x_[k - 1] + d, tab_x_[k]);
    }
  }
  return 0.0;
}

double MixtureModel::alt_density_at_zero() const {
  switch (family_) {
    case Family::kGaussianLocation:
      throw std::invalid_argument("alt_density_at_zero: defined for uniform-null families only");
    case Family::kUniformSqrt:
      return std::numeric_limits<double>::infinity();
    case Family::kUniformStep:
      return 1.0 / cut_;
    case Family::kUniformCustom:
      return tab_f_.front();
  }
  return 0.0;
}

LabeledSample MixtureModel::sample(std::size_t n, RngStream& rng) const {
  LabeledSample out;
  out.theta.resize(n);
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool alt = rng.uniform01() < pi1();
    out.theta[i] = alt ? 1 : 0;
    const double u = rng.uniform_open();
    out.x[i] = alt ? alt_quantile(u) : quantile(Component::kNull, u);
  }
  return out;
}

std::string MixtureModel::spec_string() const {
  switch (family_) {
    case Family::kGaussianLocation:
      return "gaussian(mu=" + fmt_real(mu_) + ")";
    case Family::kUniformSqrt:
      return "usqrt";
    case Family::kUniformStep:
      return "ustep(cut=" + fmt_real(cut_) + ")";
    case Family::kUniformCustom:
      return "ucustom";
  }
  return "";
}

namespace {

// Splits "name(key=value)" into (name, key, value); key/value empty when
// there is no parenthesized argument.
void split_spec(const std::string& spec, std::string& name, std::string& key,
                std::string& value) {
  std::string s;
  for (char c : spec) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  const auto open = s.find('(');
  if (open == std::string::npos) {
    name = s;
    return;
  }
  if (s.back() != ')') throw ConfigError("model spec '" + spec + "': missing ')'");
  name = s.substr(0, open);
  const std::string inner = s.substr(open + 1, s.size() - open - 2);
  const auto eq = inner.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("model spec '" + spec + "': expected key=value inside parentheses");
  }
  key = inner.substr(0, eq);
  value = inner.substr(eq + 1);
}

double parse_real(const std::string& v, const std::string& field) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("field '" + field + "': '" + v + "' is not a real number");
  }
}

std::vector<std::pair<double, double>> load_density_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("ucustom: cannot open density table '" + path + "'");
  std::vector<std::pair<double, double>> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    double x, f;
    if (!(ls >> x)) continue;  // blank line
    if (!(ls >> f)) {
      throw ConfigError("ucustom: line " + std::to_string(lineno) + " of '" + path +
                        "' needs two numbers");
    }
    table.emplace_back(x, f);
  }
  return table;
}

}  // namespace

MixtureModel parse_model_spec(const std::string& spec, double pi0) {
  if (!(pi0 > 0.0 && pi0 < 1.0)) throw ConfigError("field 'pi0': must lie in (0,1)");
  std::string name, key, value;
  split_spec(spec, name, key, value);
  try {
    if (name == "gaussian") {
      if (key != "mu") throw ConfigError("model 'gaussian' expects mu=<real>");
      return MixtureModel::gaussian_location(pi0, parse_real(value, "mu"));
    }
    if (name == "usqrt") {
      if (!key.empty()) throw ConfigError("model 'usqrt' takes no arguments");
      return MixtureModel::uniform_sqrt(pi0);
    }
    if (name == "ustep") {
      if (key.empty()) return MixtureModel::uniform_step(pi0, 0.5);
      if (key != "cut") throw ConfigError("model 'ustep' expects cut=<real>");
      return MixtureModel::uniform_step(pi0, parse_real(value, "cut"));
    }
    if (name == "ucustom") {
      if (key != "file") throw ConfigError("model 'ucustom' expects file=<path>");
      return MixtureModel::uniform_custom(pi0, load_density_table(value));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model spec '" + spec + "': " + e.what());
  }
  throw ConfigError("unknown model '" + name + "' (expected gaussian, usqrt, ustep or ucustom)");
}

}  // namespace fdrlim
