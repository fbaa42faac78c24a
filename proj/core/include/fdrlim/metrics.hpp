#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fdrlim {

// Per-trial confusion counts and proportions. fdp = V / max(R,1),
// fnp = T / max(A,1) where V counts false rejections, T missed
// alternatives and A = n - R accepted hypotheses.
struct TrialSummary {
  std::size_t n = 0;
  std::size_t v = 0;  // rejected nulls
  std::size_t r = 0;  // rejections
  std::size_t t = 0;  // accepted alternatives
  std::size_t a = 0;  // acceptances
  double fdp = 0.0;
  double fnp = 0.0;
};

TrialSummary summarize(std::span<const std::uint8_t> reject,
                       std::span<const std::uint8_t> theta);

// Across trials: FDR/FNR are means of the proportions with standard
// errors sd/sqrt(trials); the marginal versions are ratios of summed
// counts with the 0/0 -> 0 convention. Trial order is fixed by index.
struct AggregateReport {
  std::size_t trials = 0;
  double fdr = 0.0;
  double fdr_se = 0.0;
  double fnr = 0.0;
  double fnr_se = 0.0;
  double mfdr = 0.0;
  double mfnr = 0.0;
};

AggregateReport aggregate(std::span<const TrialSummary> trials);

enum class Metric { kFdp, kFnp };

// Fraction of trials whose metric strictly exceeds the threshold.
double exceedance(std::span<const TrialSummary> trials, Metric metric, double threshold);

}  // namespace fdrlim
