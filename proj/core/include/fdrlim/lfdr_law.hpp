#pragma once

#include <vector>

#include "fdrlim/mixture.hpp"

namespace fdrlim {

// Law of W = lfdr(X) under the marginal, with the selection machinery
// built on it. S_u is the Bernoulli(u) selector that takes the mass-u
// lower tail of W, splitting a boundary atom fractionally:
//
//   a(u) = E[W | S_u = 1]    (marginal FDR of the most promising mass u)
//   b(u) = E[1-W | S_u = 0]  (marginal FNR of the rest)
//
// a increases from 0 to pi0, b decreases from pi1 to 0. The optimal
// mFDR/mFNR tradeoff is b*(alpha) = b(u*(alpha)) with
// u*(alpha) = sup{u : a(u) <= alpha}.
//
// Two representations: finitely many atoms (ustep; gaussian with mu=0),
// handled with exact partial-atom arithmetic, and a continuous strictly
// monotone W (gaussian, usqrt, ucustom), where the mass-u selection is an
// x-threshold set and everything reduces to model CDFs.
class LfdrLaw {
 public:
  struct Atom {
    double w = 0.0;
    double mass = 0.0;
  };

  explicit LfdrLaw(const MixtureModel& model);

  const MixtureModel& model() const { return model_; }
  double pi0() const { return model_.pi0(); }
  double pi1() const { return model_.pi1(); }
  bool has_atoms() const { return !atoms_.empty(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  double a_of_u(double u) const;
  double b_of_u(double u) const;
  double u_star(double alpha) const;
  double mfnr_star(double alpha) const { return b_of_u(u_star(alpha)); }

  // Threshold form of the level-alpha selection: reject when W < c,
  // accept when W > c, randomize with probability p at W == c.
  struct Threshold {
    bool reject_none = false;
    bool reject_all = false;
    double c = 0.0;
    double p = 0.0;
  };
  Threshold np_threshold(double alpha) const;

  // Alpha values where the tradeoff curve can kink (atom laws only);
  // merged into evaluation grids so hulls see exact corners.
  std::vector<double> knot_alphas() const;

 private:
  double continuous_region_x(double u) const;  // x threshold of the mass-u set

  MixtureModel model_;  // owned copy, so laws built from temporaries stay valid
  std::vector<Atom> atoms_;      // ascending w; empty for continuous laws
  std::vector<double> cum_;      // cumulative atom mass
  std::vector<double> cum_w_;    // cumulative sum of w * mass
  bool increasing_ = true;       // continuous laws: W increasing in x?
};

}  // namespace fdrlim
