#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdrlim/estimators.hpp"
#include "fdrlim/lfdr_law.hpp"
#include "fdrlim/rng.hpp"
#include "fdrlim/tradeoff.hpp"

namespace fdrlim {

// How a decision vector used randomness. Global-coin rules flip one coin
// per dataset and every hypothesis follows the chosen branch; the
// threshold rule randomizes per hypothesis only on Lfdr ties.
struct RandomizationTrace {
  enum class Kind { kGlobalCoin, kTieBreaks };
  Kind kind = Kind::kGlobalCoin;
  int branch = 1;             // 1 = first branch, 2 = second
  double branch_prob = 1.0;   // probability of branch 1
  double level1 = 0.0;        // the two mixed levels (global-coin rules)
  double level2 = 0.0;
  double threshold = 0.0;     // W cutoff actually applied
  double tie_prob = 0.0;      // per-hypothesis tie rejection probability
  std::size_t tie_draws = 0;  // coins spent on ties
};

struct DecisionVector {
  std::vector<std::uint8_t> reject;
  std::optional<RandomizationTrace> trace;  // present iff the rule randomized

  std::size_t rejection_count() const;
};

// Optimal mFDR-alpha rule: reject W < c, randomize on the boundary atom.
DecisionVector np_oracle(const LfdrLaw& law, double alpha, std::span<const double> x,
                         RngStream& rng);

// FNR-optimal rule at FDR budget alpha: one coin picks between the two
// threshold rules bracketing alpha on the tradeoff hull.
DecisionVector oracle_randomized(const LfdrLaw& law, double alpha, std::span<const double> x,
                                 RngStream& rng);
DecisionVector oracle_randomized(const LfdrLaw& law, const RandomizationSplit& split,
                                 std::span<const double> x, RngStream& rng);

// Rejects everything with probability alpha/pi0, nothing otherwise.
// Controls FDR exactly at alpha while its FDP never concentrates.
DecisionVector trivial_randomized(double alpha, double pi0, std::size_t n, RngStream& rng);

// pi0-weighted step-up rule on p-values: largest i with
// p_(i) <= i alpha / (n pi0), rejecting every p at or below that order
// statistic. Deterministic.
DecisionVector bh_oracle(std::span<const double> p_values, double alpha, double pi0);

// Thresholds estimated Lfdr at y-star(alpha). Deterministic given W-hat.
DecisionVector sun_cai(const LfdrHatVector& w_hat, double alpha);

// Data-driven analogue of oracle_randomized: hull of the estimated
// tradeoff points, one coin between the bracketing thresholds.
DecisionVector data_driven(const LfdrHatVector& w_hat, double alpha, RngStream& rng);
DecisionVector data_driven(std::span<const double> x, double alpha, double pi0,
                           const DensityFn& f0, const EstimatorSpec& estimator, RngStream& rng,
                           const MixtureModel* oracle_model = nullptr);

// Procedure grammar: np | oracle | trivial | bh | suncai | datadriven,
// the last two optionally with (est=<estimator spec>); when omitted the
// family default is grenander for uniform-null models, kde for gaussian.
struct ProcedureSpec {
  enum class Kind { kNp, kOracle, kTrivial, kBh, kSunCai, kDataDriven } kind = Kind::kBh;
  std::optional<EstimatorSpec> estimator;

  bool needs_full_law() const { return kind == Kind::kNp || kind == Kind::kOracle; }
  bool randomizes() const {
    return kind == Kind::kNp || kind == Kind::kOracle || kind == Kind::kTrivial ||
           kind == Kind::kDataDriven;
  }
  std::string to_string() const;
};
ProcedureSpec parse_procedure_spec(const std::string& spec);

}  // namespace fdrlim
