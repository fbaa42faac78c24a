// End-to-end acceptance gate. Each test checks one shipping criterion and
// prints a single PASS/FAIL line; tolerances and runtime budgets are pinned
// in the constants below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fdrlim/config.hpp"
#include "fdrlim/estimators.hpp"
#include "fdrlim/gcm.hpp"
#include "fdrlim/grenander.hpp"
#include "fdrlim/harness.hpp"
#include "fdrlim/metrics.hpp"
#include "fdrlim/mixture.hpp"
#include "fdrlim/procedures.hpp"
#include "fdrlim/rng.hpp"
#include "fdrlim/stats.hpp"
#include "fdrlim/tradeoff.hpp"

namespace fdrlim {
namespace {

constexpr std::uint64_t kSeed = 20260819;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int idx, const std::string& name, bool pass, double seconds) {
  std::ostringstream line;
  line << "[acceptance] criterion " << idx << " (" << name << "): "
       << (pass ? "PASS" : "FAIL") << " [" << static_cast<int>(seconds * 1000.0) << " ms]";
  std::cout << line.str() << std::endl;
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AggregateReport run_cells(const MixtureModel& m, double alpha, std::size_t alpha_idx,
                          std::size_t proc_idx, std::size_t n, std::size_t trials,
                          const std::string& proc, const DensityFn& f0,
                          const EstimatorSpec& est) {
  std::vector<TrialSummary> sums;
  sums.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = RngStream::child(kSeed, {alpha_idx, proc_idx, t});
    const LabeledSample smp = m.sample(n, rng);
    DecisionVector d;
    if (proc == "datadriven") {
      d = data_driven(smp.x, alpha, m.pi0(), f0, est, rng);
    } else if (proc == "suncai") {
      const DensityFn fhat = make_density_estimate(est, smp.x, nullptr);
      d = sun_cai(lfdr_hat(m.pi0(), f0, fhat, smp.x), alpha);
    } else {
      std::vector<double> p(smp.x.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = m.uniform_null() ? smp.x[i] : normal_sf(smp.x[i]);
      }
      d = bh_oracle(p, alpha, m.pi0());
    }
    sums.push_back(summarize(d.reject, smp.theta));
  }
  return aggregate(sums);
}

TEST(Acceptance, Criterion01StepModelClosedForms) {
  const Timer timer;
  const double tol = 1e-9;
  const MixtureModel m = MixtureModel::uniform_step(0.75, 0.5);
  const LfdrLaw law(m);
  const TradeoffCurve curve = fnr_star_curve(law, default_alpha_grid(law));

  for (double a : {0.0, 0.1, 0.3, 0.45, 0.599}) {
    EXPECT_NEAR(law.mfnr_star(a), 0.25, tol) << "alpha " << a;
  }
  for (double a : {0.6, 0.65, 0.75, 0.9}) {
    EXPECT_NEAR(law.mfnr_star(a), 0.0, tol) << "alpha " << a;
  }
  for (double a : {0.0, 0.15, 0.3, 0.45, 0.6}) {
    EXPECT_NEAR(curve.fnr_at(a), 0.25 * (1.0 - a / 0.6), tol) << "alpha " << a;
  }
  const RandomizationSplit split = randomization_split(law, curve, 0.3);
  EXPECT_NEAR(split.alpha1, 0.0, tol);
  EXPECT_NEAR(split.alpha2, 0.6, tol);
  EXPECT_NEAR(split.p, 0.5, tol);

  const double secs = timer.seconds();
  EXPECT_LT(secs, 1.0);
  report(1, "step model closed forms", !HasFailure(), secs);
}

TEST(Acceptance, Criterion02SqrtModelClosedForms) {
  const Timer timer;
  const double tol = 1e-6;
  const MixtureModel m = MixtureModel::uniform_sqrt(0.75);
  const LfdrLaw law(m);
  const TradeoffCurve curve = fnr_star_curve(law, default_alpha_grid(law));

  for (double a : {0.15, 0.3, 0.45, 0.6}) {
    const double s = a / (1.5 - a);
    EXPECT_NEAR(law.mfnr_star(a), 0.5 * (1.0 - s) / (s + 2.0), tol) << "alpha " << a;
    EXPECT_NEAR(curve.fnr_at(a), 0.25 * (1.0 - a / 0.75), tol) << "alpha " << a;
  }
  EXPECT_NEAR(law.mfnr_star(0.3), 1.0 / 6.0, tol);
  EXPECT_NEAR(law.mfnr_star(0.6), 0.0625, tol);

  const double secs = timer.seconds();
  report(2, "sqrt model closed forms", !HasFailure(), secs);
}

TEST(Acceptance, Criterion03GaussianParametricCrossCheck) {
  const Timer timer;
  const MixtureModel m = MixtureModel::gaussian_location(0.75, 1.0);
  const LfdrLaw law(m);
  for (int k = 1; k <= 14; ++k) {
    const double a = 0.05 * k;
    const double via_law = law.mfnr_star(a);
    const double via_sweep = gaussian_parametric_mfnr(1.0, 0.75, a);
    EXPECT_NEAR(via_law, via_sweep, 1e-5) << "alpha " << a;
    EXPECT_GT(via_law, 0.25 * (1.0 - a / 0.75)) << "alpha " << a;
  }
  const double secs = timer.seconds();
  report(3, "gaussian parametric cross-check", !HasFailure(), secs);
}

TEST(Acceptance, Criterion04StepSimulationAtScale) {
  const Timer timer;
  const MixtureModel m = MixtureModel::uniform_step(0.75, 0.5);
  const DensityFn f0 = [](double) { return 1.0; };
  const EstimatorSpec est = parse_estimator_spec("grenander");
  const std::size_t n = 500, trials = 1000;

  const std::vector<double> alphas{0.1, 0.2, 0.3, 0.4, 0.5};
  const std::vector<std::string> procs{"datadriven", "bh", "suncai"};
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const double a = alphas[ai];
    for (std::size_t pi = 0; pi < procs.size(); ++pi) {
      const AggregateReport rep = run_cells(m, a, ai, pi, n, trials, procs[pi], f0, est);
      EXPECT_LE(rep.fdr, a + 0.05) << procs[pi] << " alpha " << a;
      if (procs[pi] == "datadriven") {
        EXPECT_NEAR(rep.fnr, 0.25 * (1.0 - a / 0.6), 0.05) << "alpha " << a;
      } else {
        EXPECT_NEAR(rep.fnr, 0.25, 0.05) << procs[pi] << " alpha " << a;
      }
    }
  }
  const double secs = timer.seconds();
  EXPECT_LT(secs, 180.0);
  report(4, "step model simulation at scale", !HasFailure(), secs);
}

TEST(Acceptance, Criterion05GaussianSimulationTracksTheory) {
  const Timer timer;
  const MixtureModel m = MixtureModel::gaussian_location(0.75, 1.0);
  const DensityFn f0 = [](double x) { return normal_pdf(x); };
  const EstimatorSpec est = parse_estimator_spec("kde");
  const std::size_t n = 500, trials = 1000;

  const std::vector<double> alphas{0.2, 0.4, 0.6};
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const double a = alphas[ai];
    const AggregateReport dd = run_cells(m, a, ai, 0, n, trials, "datadriven", f0, est);
    EXPECT_NEAR(dd.fnr, 0.25 * (1.0 - a / 0.75), 0.05) << "alpha " << a;
    const AggregateReport bh = run_cells(m, a, ai, 1, n, trials, "bh", f0, est);
    EXPECT_NEAR(bh.fnr, gaussian_parametric_mfnr(1.0, 0.75, a), 0.05) << "alpha " << a;
  }
  const double secs = timer.seconds();
  EXPECT_LT(secs, 300.0);
  report(5, "gaussian simulation tracks theory", !HasFailure(), secs);
}

TEST(Acceptance, Criterion06ExceedanceConcentration) {
  const Timer timer;
  const MixtureModel m = MixtureModel::gaussian_location(0.75, 2.0);
  const LfdrLaw law(m);
  const double fnp_cap = law.mfnr_star(0.3) + 0.05;
  const std::size_t n = 20000, trials = 200;

  int bad = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = RngStream::child(kSeed + 6, {t});
    const LabeledSample smp = m.sample(n, rng);
    const DecisionVector d = np_oracle(law, 0.3, smp.x, rng);
    const TrialSummary s = summarize(d.reject, smp.theta);
    if (s.fdp > 0.35 || s.fnp > fnp_cap) ++bad;
  }
  EXPECT_LE(bad, 10) << "of " << trials << " trials";
  const double secs = timer.seconds();
  report(6, "threshold rule FDP/FNP concentration", !HasFailure(), secs);
}

TEST(Acceptance, Criterion07PartialMeansMatchTheSelectionSize) {
  const Timer timer;
  const MixtureModel m = MixtureModel::gaussian_location(0.75, 1.0);
  const LfdrLaw law(m);
  const std::size_t n = 20000, trials = 200;
  const std::vector<double> taus{0.25, 0.5, 0.75};
  std::vector<double> targets;
  for (double tau : taus) targets.push_back(law.a_of_u(tau));

  int good = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = RngStream::child(kSeed + 7, {t});
    const LabeledSample smp = m.sample(n, rng);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = m.lfdr(smp.x[i]);
    std::sort(w.begin(), w.end());
    bool ok = true;
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const std::size_t k = static_cast<std::size_t>(taus[j] * static_cast<double>(n));
      double sum = 0.0;
      for (std::size_t i = 0; i < k; ++i) sum += w[i];
      if (std::abs(sum / static_cast<double>(k) - targets[j]) > 0.02) ok = false;
    }
    if (ok) ++good;
  }
  EXPECT_GE(good, 195) << "of " << trials << " trials";
  const double secs = timer.seconds();
  report(7, "sorted lfdr partial means", !HasFailure(), secs);
}

// O(n^3) lower hull: an interior point is a vertex exactly when it lies
// strictly below every chord spanning it; endpoints always survive. All
// comparisons are exact integer cross products.
struct IntPt {
  long long s = 0, t = 0;
};

std::vector<IntPt> brute_lower_hull(std::vector<IntPt> pts) {
  std::sort(pts.begin(), pts.end(), [](const IntPt& a, const IntPt& b) {
    return a.s < b.s || (a.s == b.s && a.t < b.t);
  });
  std::vector<IntPt> uniq;
  for (const IntPt& p : pts) {
    if (!uniq.empty() && uniq.back().s == p.s) continue;  // keep the min t
    uniq.push_back(p);
  }
  if (uniq.size() <= 2) return uniq;
  std::vector<IntPt> hull{uniq.front()};
  for (std::size_t mid = 1; mid + 1 < uniq.size(); ++mid) {
    bool vertex = true;
    for (std::size_t i = 0; i < mid && vertex; ++i) {
      for (std::size_t j = mid + 1; j < uniq.size() && vertex; ++j) {
        // t_mid < chord_(i,j)(s_mid), cross-multiplied (s_j > s_i)
        const long long lhs = (uniq[mid].t - uniq[i].t) * (uniq[j].s - uniq[i].s);
        const long long rhs = (uniq[j].t - uniq[i].t) * (uniq[mid].s - uniq[i].s);
        if (lhs >= rhs) vertex = false;
      }
    }
    if (vertex) hull.push_back(uniq[mid]);
  }
  hull.push_back(uniq.back());
  return hull;
}

TEST(Acceptance, Criterion08GeometryOracles) {
  const Timer timer;
  std::mt19937_64 gen(kSeed);

  std::uniform_int_distribution<int> n_dist(2, 12);
  std::uniform_int_distribution<long long> s_dist(0, 64), t_dist(-32, 32);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = n_dist(gen);
    std::vector<IntPt> ipts(static_cast<std::size_t>(n));
    for (IntPt& p : ipts) p = {s_dist(gen), t_dist(gen)};
    std::sort(ipts.begin(), ipts.end(), [](const IntPt& a, const IntPt& b) {
      return a.s < b.s || (a.s == b.s && a.t < b.t);
    });
    bool distinct = false;
    for (std::size_t i = 1; i < ipts.size(); ++i) distinct |= ipts[i].s != ipts[0].s;
    if (!distinct) continue;  // gcm needs two distinct abscissae

    std::vector<KnotPoint> pts;
    for (const IntPt& p : ipts) {
      pts.push_back({static_cast<double>(p.s) / 64.0, static_cast<double>(p.t) / 32.0});
    }
    const KnotCurve hull = gcm_of_points(pts);
    const std::vector<IntPt> expect = brute_lower_hull(ipts);
    ASSERT_EQ(hull.knots().size(), expect.size()) << "rep " << rep;
    for (std::size_t i = 0; i < expect.size(); ++i) {
      ASSERT_DOUBLE_EQ(hull.knots()[i].s, static_cast<double>(expect[i].s) / 64.0);
      ASSERT_DOUBLE_EQ(hull.knots()[i].t, static_cast<double>(expect[i].t) / 32.0);
    }
  }

  // monotone density fits match a pooled-violators pass bit for bit
  std::uniform_int_distribution<int> size_dist(1, 50);
  std::uniform_real_distribution<double> val_dist(0.001, 0.999);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> xs(static_cast<std::size_t>(size_dist(gen)));
    for (double& v : xs) v = val_dist(gen);

    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<double> s{0.0}, t{0.0};
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double ti = static_cast<double>(i + 1) / n;
      if (sorted[i] == s.back()) {
        t.back() = ti;
      } else {
        s.push_back(sorted[i]);
        t.push_back(ti);
      }
    }
    const auto slope = [&](std::size_t lo, std::size_t hi) {
      return (t[hi] - t[lo]) / (s[hi] - s[lo]);
    };
    std::vector<std::size_t> ends;
    for (std::size_t k = 1; k < s.size(); ++k) {
      ends.push_back(k);
      while (ends.size() >= 2) {
        const std::size_t hi = ends.back();
        const std::size_t mid = ends[ends.size() - 2];
        const std::size_t lo = ends.size() >= 3 ? ends[ends.size() - 3] : 0;
        if (slope(lo, mid) > slope(mid, hi)) break;
        ends.erase(ends.end() - 2);
      }
    }
    const GrenanderFit fit = grenander(xs);
    ASSERT_EQ(fit.slopes.size(), ends.size()) << "rep " << rep;
    std::size_t prev = 0;
    for (std::size_t b = 0; b < ends.size(); ++b) {
      ASSERT_DOUBLE_EQ(fit.slopes[b], slope(prev, ends[b])) << "rep " << rep;
      ASSERT_DOUBLE_EQ(fit.majorant.knots()[b + 1].s, s[ends[b]]);
      prev = ends[b];
    }
  }

  const double secs = timer.seconds();
  report(8, "geometry oracles", !HasFailure(), secs);
}

TEST(Acceptance, Criterion09TrivialRuleSplitsFdrFromFdp) {
  const Timer timer;
  const MixtureModel m = MixtureModel::uniform_step(0.75, 0.5);
  const std::size_t n = 10000, trials = 1000;

  std::vector<TrialSummary> sums;
  sums.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = RngStream::child(kSeed + 9, {t});
    const LabeledSample smp = m.sample(n, rng);
    const DecisionVector d = trivial_randomized(0.3, 0.75, n, rng);
    sums.push_back(summarize(d.reject, smp.theta));
  }
  const AggregateReport rep = aggregate(sums);
  EXPECT_NEAR(rep.fdr, 0.3, 0.05);
  // the realized proportion never sits near its mean: it is 0 or about pi0
  EXPECT_NEAR(exceedance(sums, Metric::kFdp, 0.4), 0.4, 0.05);
  const double secs = timer.seconds();
  report(9, "trivial rule FDR versus FDP spread", !HasFailure(), secs);
}

TEST(Acceptance, Criterion10ByteIdenticalAcrossThreadCounts) {
  const Timer timer;
  ExperimentConfig cfg;
  cfg.model = "ustep(cut=0.5)";
  cfg.pi0 = 0.75;
  cfg.alphas = {0.2, 0.4};
  cfg.procedures = {"bh", "suncai", "datadriven", "oracle"};
  cfg.n = 200;
  cfg.trials = 50;
  cfg.seed = 424242;

  const std::string out8 = tmp("accept_t8.csv");
  const std::string out1 = tmp("accept_t1.csv");
  const char* bin = std::getenv("FDRLIM_CLI");
  if (bin != nullptr) {
    const std::string cfg_path = tmp("accept_sim.cfg");
    {
      std::ofstream f(cfg_path);
      f << "model = " << cfg.model << "\npi0 = 0.75\nalphas = 0.2,0.4\n"
        << "procedures = bh,suncai,datadriven,oracle\nn = 200\ntrials = 50\nseed = 424242\n";
    }
    const std::string base = std::string("'") + bin + "' simulate --config '" + cfg_path + "'";
    ASSERT_EQ(std::system((base + " --threads 8 --out '" + out8 + "' >/dev/null").c_str()), 0);
    ASSERT_EQ(std::system((base + " --threads 1 --out '" + out1 + "' >/dev/null").c_str()), 0);
  } else {
    cfg.threads = 8;
    cfg.out = out8;
    run_simulation(cfg);
    cfg.threads = 1;
    cfg.out = out1;
    run_simulation(cfg);
  }
  const std::string a = slurp(out8);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(out1));
  const double secs = timer.seconds();
  report(10, "byte-identical output across thread counts", !HasFailure(), secs);
}

}  // namespace
}  // namespace fdrlim
