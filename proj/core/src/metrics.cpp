#include "fdrlim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace fdrlim {

TrialSummary summarize(std::span<const std::uint8_t> reject,
                       std::span<const std::uint8_t> theta) {
  if (reject.size() != theta.size()) {
    throw std::invalid_argument("summarize: decision and label lengths differ");
  }
  TrialSummary s;
  s.n = reject.size();
  for (std::size_t i = 0; i < reject.size(); ++i) {
    if (reject[i]) {
      ++s.r;
      if (!theta[i]) ++s.v;
    } else if (theta[i]) {
      ++s.t;
    }
  }
  s.a = s.n - s.r;
  s.fdp = static_cast<double>(s.v) / static_cast<double>(std::max<std::size_t>(s.r, 1));
  s.fnp = static_cast<double>(s.t) / static_cast<double>(std::max<std::size_t>(s.a, 1));
  return s;
}

AggregateReport aggregate(std::span<const TrialSummary> trials) {
  if (trials.empty()) throw std::invalid_argument("aggregate: no trials");
  AggregateReport rep;
  rep.trials = trials.size();
  double sum_fdp = 0.0, sum_fnp = 0.0;
  double sum_v = 0.0, sum_r = 0.0, sum_t = 0.0, sum_a = 0.0;
  for (const TrialSummary& s : trials) {
    sum_fdp += s.fdp;
    sum_fnp += s.fnp;
    sum_v += static_cast<double>(s.v);
    sum_r += static_cast<double>(s.r);
    sum_t += static_cast<double>(s.t);
    sum_a += static_cast<double>(s.a);
  }
  const double m = static_cast<double>(trials.size());
  rep.fdr = sum_fdp / m;
  rep.fnr = sum_fnp / m;
  if (trials.size() > 1) {
    double ss_fdp = 0.0, ss_fnp = 0.0;
    for (const TrialSummary& s : trials) {
      ss_fdp += (s.fdp - rep.fdr) * (s.fdp - rep.fdr);
      ss_fnp += (s.fnp - rep.fnr) * (s.fnp - rep.fnr);
    }
    rep.fdr_se = std::sqrt(ss_fdp / (m - 1.0)) / std::sqrt(m);
    rep.fnr_se = std::sqrt(ss_fnp / (m - 1.0)) / std::sqrt(m);
  }
  rep.mfdr = sum_r > 0.0 ? sum_v / sum_r : 0.0;
  rep.mfnr = sum_a > 0.0 ? sum_t / sum_a : 0.0;
  return rep;
}

double exceedance(std::span<const TrialSummary> trials, Metric metric, double threshold) {
  if (trials.empty()) throw std::invalid_argument("exceedance: no trials");
  std::size_t count = 0;
  for (const TrialSummary& s : trials) {
    const double v = metric == Metric::kFdp ? s.fdp : s.fnp;
    if (v > threshold) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(trials.size());
}

}  // namespace fdrlim
