#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdrlim/config.hpp"

namespace fdrlim {

// Tabulates the oracle tradeoff of a model: for each alpha the optimal
// mFNR, its convex minorant and the two-level mixing recipe. Gaussian
// models with mu > 0 get a sibling "<stem>_parametric<ext>" file holding
// the closed-form (mFDR, mFNR) sweep.
struct CurvesRequest {
  std::string model = "ustep(cut=0.5)";
  double pi0 = 0.75;
  std::vector<double> alphas;  // empty -> dense default grid on (0,1)
  std::string out = "curves.csv";
};
void run_curves(const CurvesRequest& req);

// Monte Carlo study over the (alpha, procedure) grid of the config. Each
// trial owns an RNG stream derived from (seed, alpha index, procedure
// index, trial index), so the output file is byte-identical for any
// thread count.
void run_simulation(const ExperimentConfig& cfg);

// Applies one procedure to a file of observations (whitespace separated
// reals) and writes an index,x,w_hat,reject table plus a rejection-count
// footer and, for randomized rules, a trace of the coin used.
struct DecideRequest {
  std::string input;
  std::string procedure = "bh";
  double alpha = 0.1;
  double pi0 = 0.75;
  // Model grammar, or the aliases uniform -> ustep(cut=0.5) and
  // gaussian -> gaussian(mu=1). np and oracle need the full grammar.
  std::string null_spec = "uniform";
  std::uint64_t seed = 20260819;
  std::string out;  // empty or "-" -> stdout
};
void run_decide(const DecideRequest& req);

enum class PlotKind { kCurves, kSimulation };

// Renders a CSV produced by run_curves or run_simulation as an SVG.
// Simulation plots recompute the theoretical frontier from the file's
// model metadata for reference.
void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& out_svg);

}  // namespace fdrlim
