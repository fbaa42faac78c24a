#include "fdrlim/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fdrlim/errors.hpp"

namespace fdrlim {

namespace {
constexpr double kTieTol = 1e-12;
}

std::size_t DecisionVector::rejection_count() const {
  std::size_t r = 0;
  for (std::uint8_t d : reject) r += d;
  return r;
}

DecisionVector np_oracle(const LfdrLaw& law, double alpha, std::span<const double> x,
                         RngStream& rng) {
  const LfdrLaw::Threshold thr = law.np_threshold(alpha);
  DecisionVector out;
  out.reject.assign(x.size(), 0);
  if (thr.reject_all) {
    std::fill(out.reject.begin(), out.reject.end(), 1);
    return out;
  }
  if (thr.reject_none) return out;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = law.model().lfdr(x[i]);
    if (w < thr.c - kTieTol) {
      out.reject[i] = 1;
    } else if (w <= thr.c + kTieTol) {
      ++ties;
      out.reject[i] = rng.bernoulli(thr.p) ? 1 : 0;
    }
  }
  if (law.has_atoms()) {
    RandomizationTrace tr;
    tr.kind = RandomizationTrace::Kind::kTieBreaks;
    tr.threshold = thr.c;
    tr.tie_prob = thr.p;
    tr.tie_draws = ties;
    out.trace = tr;
  }
  return out;
}

DecisionVector oracle_randomized(const LfdrLaw& law, const RandomizationSplit& split,
                                 std::span<const double> x, RngStream& rng) {
  const bool first = rng.bernoulli(split.p);
  const double level = first ? split.alpha1 : split.alpha2;
  DecisionVector out = np_oracle(law, level, x, rng);
  RandomizationTrace tr;
  if (out.trace) tr = *out.trace;  // keep tie bookkeeping from the inner rule
  tr.kind = RandomizationTrace::Kind::kGlobalCoin;
  tr.branch = first ? 1 : 2;
  tr.branch_prob = split.p;
  tr.level1 = split.alpha1;
  tr.level2 = split.alpha2;
  out.trace = tr;
  return out;
}

DecisionVector oracle_randomized(const LfdrLaw& law, double alpha, std::span<const double> x,
                                 RngStream& rng) {
  const auto grid = default_alpha_grid(law);
  return oracle_randomized(law, randomization_split(law, alpha, grid), x, rng);
}

DecisionVector trivial_randomized(double alpha, double pi0, std::size_t n, RngStream& rng) {
  if (!(pi0 > 0.0 && pi0 < 1.0)) throw std::invalid_argument("trivial: pi0 outside (0,1)");
  if (!(alpha >= 0.0 && alpha <= pi0)) {
    throw std::invalid_argument("trivial: alpha must lie in [0, pi0]");
  }
  const double p = alpha / pi0;
  const bool all = rng.bernoulli(p);
  DecisionVector out;
  out.reject.assign(n, all ? 1 : 0);
  RandomizationTrace tr;
  tr.kind = RandomizationTrace::Kind::kGlobalCoin;
  tr.branch = all ? 1 : 2;
  tr.branch_prob = p;
  tr.level1 = alpha;
  tr.level2 = 0.0;
  out.trace = tr;
  return out;
}

DecisionVector bh_oracle(std::span<const double> p_values, double alpha, double pi0) {
  if (!(pi0 > 0.0 && pi0 < 1.0)) throw std::invalid_argument("bh: pi0 outside (0,1)");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("bh: alpha outside [0,1]");
  const std::size_t n = p_values.size();
  DecisionVector out;
  out.reject.assign(n, 0);
  if (n == 0) return out;
  std::vector<double> sorted(p_values.begin(), p_values.end());
  std::sort(sorted.begin(), sorted.end());
  const double scale = alpha / (static_cast<double>(n) * pi0);
  double cutoff = -1.0;
  for (std::size_t i = n; i >= 1; --i) {
    if (sorted[i - 1] <= static_cast<double>(i) * scale) {
      cutoff = sorted[i - 1];
      break;
    }
  }
  if (cutoff >= 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (p_values[i] <= cutoff) out.reject[i] = 1;
    }
  }
  return out;
}

DecisionVector sun_cai(const LfdrHatVector& w_hat, double alpha) {
  const double y = w_hat.y_star(alpha);
  DecisionVector out;
  out.reject.assign(w_hat.size(), 0);
  const auto& w = w_hat.values();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= y) out.reject[i] = 1;
  }
  return out;
}

DecisionVector data_driven(const LfdrHatVector& w_hat, double alpha, RngStream& rng) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("data_driven: alpha outside (0,1)");
  }
  const auto hull = w_hat.b_star_hull();
  const auto br = hull.gcm.bracket(alpha);
  const double s_lo = hull.gcm.knots()[br.lo].s;
  const double s_hi = hull.gcm.knots()[br.hi].s;
  const double p_mix = br.w;
  const bool first = rng.bernoulli(p_mix);
  const double y = w_hat.y_star(first ? s_lo : s_hi);
  DecisionVector out;
  out.reject.assign(w_hat.size(), 0);
  const auto& w = w_hat.values();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= y) out.reject[i] = 1;
  }
  RandomizationTrace tr;
  tr.kind = RandomizationTrace::Kind::kGlobalCoin;
  tr.branch = first ? 1 : 2;
  tr.branch_prob = p_mix;
  tr.level1 = s_lo;
  tr.level2 = s_hi;
  tr.threshold = y;
  out.trace = tr;
  return out;
}

DecisionVector data_driven(std::span<const double> x, double alpha, double pi0,
                           const DensityFn& f0, const EstimatorSpec& estimator, RngStream& rng,
                           const MixtureModel* oracle_model) {
  const DensityFn fhat = make_density_estimate(estimator, x, oracle_model);
  return data_driven(lfdr_hat(pi0, f0, fhat, x), alpha, rng);
}

std::string ProcedureSpec::to_string() const {
  switch (kind) {
    case Kind::kNp:
      return "np";
    case Kind::kOracle:
      return "oracle";
    case Kind::kTrivial:
      return "trivial";
    case Kind::kBh:
      return "bh";
    case Kind::kSunCai:
      return estimator ? "suncai(est=" + estimator->to_string() + ")" : "suncai";
    case Kind::kDataDriven:
      return estimator ? "datadriven(est=" + estimator->to_string() + ")" : "datadriven";
  }
  return "";
}

ProcedureSpec parse_procedure_spec(const std::string& spec) {
  ProcedureSpec out;
  if (spec == "np") {
    out.kind = ProcedureSpec::Kind::kNp;
    return out;
  }
  if (spec == "oracle") {
    out.kind = ProcedureSpec::Kind::kOracle;
    return out;
  }
  if (spec == "trivial") {
    out.kind = ProcedureSpec::Kind::kTrivial;
    return out;
  }
  if (spec == "bh") {
    out.kind = ProcedureSpec::Kind::kBh;
    return out;
  }
  const auto parse_est = [&](const std::string& name,
                             ProcedureSpec::Kind kind) -> std::optional<ProcedureSpec> {
    if (spec == name) {
      ProcedureSpec p;
      p.kind = kind;
      return p;
    }
    const std::string head = name + "(est=";
    if (spec.rfind(head, 0) == 0 && spec.back() == ')') {
      ProcedureSpec p;
      p.kind = kind;
      p.estimator = parse_estimator_spec(spec.substr(head.size(), spec.size() - head.size() - 1));
      return p;
    }
    return std::nullopt;
  };
  if (auto p = parse_est("suncai", ProcedureSpec::Kind::kSunCai)) return *p;
  if (auto p = parse_est("datadriven", ProcedureSpec::Kind::kDataDriven)) return *p;
  throw ConfigError("unknown procedure '" + spec +
                    "' (expected np, oracle, trivial, bh, suncai or datadriven)");
}

}  // namespace fdrlim
