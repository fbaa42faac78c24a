#pragma once

#include <span>
#include <vector>

#include "fdrlim/gcm.hpp"
#include "fdrlim/lfdr_law.hpp"

namespace fdrlim {

// Optimal mFNR and FNR as functions of the FDR budget alpha. The FNR
// frontier is the greatest convex minorant of the mFNR frontier; a level
// alpha strictly between hull contact points is attained by mixing the two
// bracketing threshold rules.
struct TradeoffCurve {
  std::vector<double> alphas;  // evaluation grid, ascending, spans [0,1]
  std::vector<double> mfnr;    // b*(alpha)
  std::vector<double> fnr;     // convex minorant values
  KnotCurve gcm;               // hull of (alpha, b*(alpha))

  double fnr_at(double alpha) const { return gcm.eval(alpha); }
};

// Default evaluation grid: 601 equally spaced points on [0,1] merged with
// the law's exact kink locations and pi0.
std::vector<double> default_alpha_grid(const LfdrLaw& law);

// Evaluates b* on the grid (augmented with the exact anchors 0, pi0 and 1)
// and takes the hull. Grid must hold at least 2 points.
TradeoffCurve fnr_star_curve(const LfdrLaw& law, std::span<const double> grid);

// Mixing recipe attaining FNR*(alpha): run the threshold rule at alpha1
// with probability p, at alpha2 otherwise. Degenerates to (alpha, alpha, 1)
// where the mFNR frontier touches its hull. Requires alpha in (0,1).
struct RandomizationSplit {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double p = 1.0;
};
RandomizationSplit randomization_split(const LfdrLaw& law, const TradeoffCurve& curve,
                                       double alpha);
RandomizationSplit randomization_split(const LfdrLaw& law, double alpha,
                                       std::span<const double> grid);

// Gaussian family closed form: sweeping the x-threshold z traces
// (mFDR(z), mFNR(z)) without any root finding. Requires mu > 0.
struct ParametricPoint {
  double z = 0.0;
  double mfdr = 0.0;
  double mfnr = 0.0;
};
std::vector<ParametricPoint> gaussian_parametric(double mu, double pi0,
                                                 std::span<const double> z_grid);

// Interpolates the parametric curve at mFDR = alpha (bisection on z).
double gaussian_parametric_mfnr(double mu, double pi0, double alpha);

// Limiting rejection threshold of the pi0-weighted step-up rule on
// uniform-null families: sup{t : pi0 t / F(t) <= alpha}, 0 when the
// budget is below the attainable window and 1 above it.
double bh_limit_threshold(const MixtureModel& model, double alpha);

}  // namespace fdrlim
