#include "fdrlim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "fdrlim/csv.hpp"
#include "fdrlim/errors.hpp"
#include "fdrlim/estimators.hpp"
#include "fdrlim/lfdr_law.hpp"
#include "fdrlim/metrics.hpp"
#include "fdrlim/mixture.hpp"
#include "fdrlim/procedures.hpp"
#include "fdrlim/stats.hpp"
#include "fdrlim/svg.hpp"
#include "fdrlim/tradeoff.hpp"

namespace fdrlim {

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_open_unit(double alpha, const std::string& what) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError(what + " must lie strictly between 0 and 1");
  }
}

DensityFn null_density(const MixtureModel& model) {
  if (model.uniform_null()) return [](double) { return 1.0; };
  return [](double x) { return normal_pdf(x); };
}

// One-sided p-value of an observation under the model's null component.
double p_value(const MixtureModel& model, double x) {
  if (model.uniform_null()) return x;
  return model.mu() < 0.0 ? normal_cdf(x) : normal_sf(x);
}

EstimatorSpec resolve_estimator(const ProcedureSpec& proc, const MixtureModel& model) {
  EstimatorSpec est;
  if (proc.estimator) {
    est = *proc.estimator;
  } else {
    est.kind =
        model.uniform_null() ? EstimatorSpec::Kind::kGrenander : EstimatorSpec::Kind::kKde;
  }
  if (est.kind == EstimatorSpec::Kind::kGrenander && !model.uniform_null()) {
    throw ConfigError("the grenander estimator needs a model supported on (0,1)");
  }
  return est;
}

std::ofstream open_output(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

double to_real(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) {
    throw std::runtime_error(what + ": '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

void run_curves(const CurvesRequest& req) {
  const MixtureModel model = parse_model_spec(req.model, req.pi0);
  const LfdrLaw law(model);

  std::vector<double> rows = req.alphas;
  for (double a : rows) require_open_unit(a, "alpha");
  if (rows.empty()) {
    for (int k = 1; k < 400; ++k) rows.push_back(k / 400.0);
    for (double a : law.knot_alphas()) {
      if (a > 0.0 && a < 1.0) rows.push_back(a);
    }
    if (model.pi0() < 1.0) rows.push_back(model.pi0());
  }
  rows = sorted_unique(std::move(rows));

  std::vector<double> grid = default_alpha_grid(law);
  grid.insert(grid.end(), rows.begin(), rows.end());
  const TradeoffCurve curve = fnr_star_curve(law, sorted_unique(std::move(grid)));

  {
    CsvWriter out(req.out);
    out.meta("kind", "curves");
    out.meta("model", model.spec_string());
    out.meta("pi0", csv_real(model.pi0()));
    out.header({"alpha", "mfnr_star", "fnr_star", "alpha1", "alpha2", "p_mix"});
    for (double a : rows) {
      const RandomizationSplit split = randomization_split(law, curve, a);
      out.row({csv_real(a), csv_real(law.mfnr_star(a)), csv_real(curve.fnr_at(a)),
               csv_real(split.alpha1), csv_real(split.alpha2), csv_real(split.p)});
    }
    out.close();
  }

  if (model.family() == Family::kGaussianLocation && model.mu() > 0.0) {
    const std::filesystem::path p(req.out);
    const auto sibling =
        (p.parent_path() / (p.stem().string() + "_parametric" + p.extension().string()))
            .string();
    std::vector<double> z_grid;
    for (double z = -6.0; z <= model.mu() + 6.0 + 1e-9; z += 0.02) z_grid.push_back(z);
    const auto points = gaussian_parametric(model.mu(), model.pi0(), z_grid);
    CsvWriter out(sibling);
    out.meta("kind", "parametric");
    out.meta("model", model.spec_string());
    out.meta("pi0", csv_real(model.pi0()));
    out.header({"z", "mfdr", "mfnr"});
    for (const auto& q : points) {
      out.row({csv_real(q.z), csv_real(q.mfdr), csv_real(q.mfnr)});
    }
    out.close();
  }
}

namespace {

struct SimulationCell {
  std::size_t alpha_idx = 0;
  std::size_t proc_idx = 0;
  double alpha = 0.0;
  const ProcedureSpec* proc = nullptr;
  RandomizationSplit split;  // oracle only
  EstimatorSpec est;         // suncai / datadriven only
};

DecisionVector apply_cell(const SimulationCell& cell, const MixtureModel& model,
                          const LfdrLaw* law, const DensityFn& f0, std::span<const double> x,
                          RngStream& rng) {
  switch (cell.proc->kind) {
    case ProcedureSpec::Kind::kNp:
      return np_oracle(*law, cell.alpha, x, rng);
    case ProcedureSpec::Kind::kOracle:
      return oracle_randomized(*law, cell.split, x, rng);
    case ProcedureSpec::Kind::kTrivial:
      return trivial_randomized(cell.alpha, model.pi0(), x.size(), rng);
    case ProcedureSpec::Kind::kBh: {
      std::vector<double> p(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) p[i] = p_value(model, x[i]);
      return bh_oracle(p, cell.alpha, model.pi0());
    }
    case ProcedureSpec::Kind::kSunCai: {
      const DensityFn fhat = make_density_estimate(cell.est, x, &model);
      return sun_cai(lfdr_hat(model.pi0(), f0, fhat, x), cell.alpha);
    }
    case ProcedureSpec::Kind::kDataDriven:
      return data_driven(x, cell.alpha, model.pi0(), f0, cell.est, rng, &model);
  }
  throw std::logic_error("unhandled procedure kind");
}

}  // namespace

void run_simulation(const ExperimentConfig& cfg) {
  if (cfg.n == 0) throw ConfigError("n must be positive");
  if (cfg.trials == 0) throw ConfigError("trials must be positive");
  const MixtureModel model = parse_model_spec(cfg.model, cfg.pi0);

  const std::vector<double> alphas =
      cfg.alphas.empty() ? default_simulation_alphas() : cfg.alphas;
  for (double a : alphas) require_open_unit(a, "alpha");

  std::vector<std::string> proc_strings = cfg.procedures;
  if (proc_strings.empty()) proc_strings = {"bh", "suncai", "datadriven"};
  std::vector<ProcedureSpec> procs;
  procs.reserve(proc_strings.size());
  for (const auto& s : proc_strings) procs.push_back(parse_procedure_spec(s));

  std::optional<LfdrLaw> law;
  std::optional<TradeoffCurve> curve;
  for (const auto& p : procs) {
    if (p.needs_full_law() && !law) law.emplace(model);
    if (p.kind == ProcedureSpec::Kind::kOracle && !curve) {
      curve = fnr_star_curve(*law, default_alpha_grid(*law));
    }
  }

  std::vector<SimulationCell> cells;
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    for (std::size_t pi = 0; pi < procs.size(); ++pi) {
      SimulationCell cell;
      cell.alpha_idx = ai;
      cell.proc_idx = pi;
      cell.alpha = alphas[ai];
      cell.proc = &procs[pi];
      switch (procs[pi].kind) {
        case ProcedureSpec::Kind::kTrivial:
          if (cell.alpha > model.pi0() + 1e-12) {
            throw ConfigError("the trivial rule needs alpha <= pi0");
          }
          break;
        case ProcedureSpec::Kind::kOracle:
          cell.split = randomization_split(*law, *curve, cell.alpha);
          break;
        case ProcedureSpec::Kind::kSunCai:
        case ProcedureSpec::Kind::kDataDriven:
          cell.est = resolve_estimator(procs[pi], model);
          break;
        default:
          break;
      }
      cells.push_back(cell);
    }
  }

  const DensityFn f0 = null_density(model);
  std::vector<std::vector<TrialSummary>> results(cells.size(),
                                                 std::vector<TrialSummary>(cfg.trials));

  const std::size_t total = cells.size() * cfg.trials;
  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  const auto worker = [&]() {
    try {
      for (;;) {
        const std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
        if (k >= total) return;
        const std::size_t ci = k / cfg.trials;
        const std::size_t ti = k % cfg.trials;
        const SimulationCell& cell = cells[ci];
        RngStream rng = RngStream::child(cfg.seed, {cell.alpha_idx, cell.proc_idx, ti});
        const LabeledSample sample = model.sample(cfg.n, rng);
        const DecisionVector d =
            apply_cell(cell, model, law ? &*law : nullptr, f0, sample.x, rng);
        results[ci][ti] = summarize(d.reject, sample.theta);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next.store(total, std::memory_order_relaxed);  // drain remaining work
    }
  };

  unsigned n_threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, std::max<std::size_t>(total, 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  CsvWriter out(cfg.out);
  out.meta("kind", "simulation");
  out.meta("model", model.spec_string());
  out.meta("pi0", csv_real(model.pi0()));
  out.meta("n", std::to_string(cfg.n));
  out.meta("trials", std::to_string(cfg.trials));
  out.meta("seed", std::to_string(cfg.seed));
  out.header({"model", "alpha", "procedure", "n", "trials", "fdr", "fdr_se", "fnr", "fnr_se",
              "mfdr", "mfnr"});
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const SimulationCell& cell = cells[ci];
    const AggregateReport rep = aggregate(results[ci]);
    out.row({model.spec_string(), csv_real(cell.alpha), cell.proc->to_string(),
             std::to_string(cfg.n), std::to_string(cfg.trials), csv_real(rep.fdr),
             csv_real(rep.fdr_se), csv_real(rep.fnr), csv_real(rep.fnr_se),
             csv_real(rep.mfdr), csv_real(rep.mfnr)});
  }
  out.close();
}

namespace {

std::vector<double> read_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<double> x;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size() || !std::isfinite(v)) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": '" + tok +
                                 "' is not a finite number");
      }
      x.push_back(v);
    }
  }
  if (x.empty()) throw std::runtime_error("'" + path + "' holds no observations");
  return x;
}

}  // namespace

void run_decide(const DecideRequest& req) {
  std::string resolved = req.null_spec;
  bool alias = false;
  if (resolved == "uniform") {
    resolved = "ustep(cut=0.5)";
    alias = true;
  } else if (resolved == "gaussian") {
    resolved = "gaussian(mu=1)";
    alias = true;
  }
  const ProcedureSpec proc = parse_procedure_spec(req.procedure);
  if (proc.needs_full_law() && alias) {
    throw ConfigError("procedure '" + proc.to_string() +
                      "' needs the full model grammar for --null, not an alias");
  }
  const MixtureModel model = parse_model_spec(resolved, req.pi0);
  require_open_unit(req.alpha, "alpha");
  if (proc.kind == ProcedureSpec::Kind::kTrivial && req.alpha > model.pi0() + 1e-12) {
    throw ConfigError("the trivial rule needs alpha <= pi0");
  }

  const std::vector<double> x = read_observations(req.input);
  if (model.uniform_null()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] > 0.0 && x[i] < 1.0)) {
        throw std::runtime_error("observation " + std::to_string(i) + " = " + csv_real(x[i]) +
                                 " lies outside (0,1), the support of '" +
                                 model.spec_string() + "'");
      }
    }
  }

  RngStream rng(req.seed);
  std::vector<double> w_col;
  DecisionVector d;
  switch (proc.kind) {
    case ProcedureSpec::Kind::kNp: {
      const LfdrLaw law(model);
      d = np_oracle(law, req.alpha, x, rng);
      for (double v : x) w_col.push_back(model.lfdr(v));
      break;
    }
    case ProcedureSpec::Kind::kOracle: {
      const LfdrLaw law(model);
      const TradeoffCurve curve = fnr_star_curve(law, default_alpha_grid(law));
      const RandomizationSplit split = randomization_split(law, curve, req.alpha);
      d = oracle_randomized(law, split, x, rng);
      for (double v : x) w_col.push_back(model.lfdr(v));
      break;
    }
    case ProcedureSpec::Kind::kTrivial:
      d = trivial_randomized(req.alpha, model.pi0(), x.size(), rng);
      break;
    case ProcedureSpec::Kind::kBh: {
      std::vector<double> p(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) p[i] = p_value(model, x[i]);
      d = bh_oracle(p, req.alpha, model.pi0());
      break;
    }
    case ProcedureSpec::Kind::kSunCai:
    case ProcedureSpec::Kind::kDataDriven: {
      const EstimatorSpec est = resolve_estimator(proc, model);
      const DensityFn fhat = make_density_estimate(est, x, &model);
      const LfdrHatVector w_hat = lfdr_hat(model.pi0(), null_density(model), fhat, x);
      w_col = w_hat.values();
      d = proc.kind == ProcedureSpec::Kind::kSunCai ? sun_cai(w_hat, req.alpha)
                                                    : data_driven(w_hat, req.alpha, rng);
      break;
    }
  }

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!req.out.empty() && req.out != "-") {
    file = open_output(req.out);
    os = &file;
  }
  *os << "# schema=1\n";
  *os << "# kind=decisions\n";
  *os << "# procedure=" << proc.to_string() << "\n";
  *os << "# alpha=" << csv_real(req.alpha) << "\n";
  *os << "# pi0=" << csv_real(model.pi0()) << "\n";
  *os << "# null=" << model.spec_string() << "\n";
  *os << "# seed=" << req.seed << "\n";
  *os << "index,x,w_hat,reject\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    *os << i << ',' << csv_real(x[i]) << ',' << (w_col.empty() ? "" : csv_real(w_col[i]))
        << ',' << static_cast<int>(d.reject[i]) << "\n";
  }
  *os << "# R=" << d.rejection_count() << "\n";
  if (d.trace) {
    const RandomizationTrace& t = *d.trace;
    if (t.kind == RandomizationTrace::Kind::kGlobalCoin) {
      *os << "# randomization=coin branch=" << t.branch << " prob_first="
          << csv_real(t.branch_prob) << " levels=" << csv_real(t.level1) << ","
          << csv_real(t.level2) << " threshold=" << csv_real(t.threshold) << "\n";
    } else {
      *os << "# randomization=ties draws=" << t.tie_draws
          << " reject_prob=" << csv_real(t.tie_prob)
          << " threshold=" << csv_real(t.threshold) << "\n";
    }
  }
  os->flush();
  if (os == &file && !file) throw std::runtime_error("write failed for '" + req.out + "'");
}

void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& out_svg) {
  const CsvTable table = read_csv(csv_path);
  const std::string want = kind == PlotKind::kCurves ? "curves" : "simulation";
  const auto it = table.meta.find("kind");
  const std::string got = it == table.meta.end() ? "(none)" : it->second;
  if (got != want) {
    throw ConfigError("'" + csv_path + "' holds kind=" + got + ", expected kind=" + want);
  }
  if (table.rows.empty()) throw std::runtime_error("'" + csv_path + "' has no data rows");

  const auto meta_or = [&](const std::string& key, const std::string& fallback) {
    const auto m = table.meta.find(key);
    return m == table.meta.end() ? fallback : m->second;
  };

  PlotSpec spec;
  if (kind == PlotKind::kCurves) {
    const std::size_t ca = table.column("alpha");
    const std::size_t cm = table.column("mfnr_star");
    const std::size_t cf = table.column("fnr_star");
    Series mfnr{"optimal mFNR"};
    mfnr.color = "#1f77b4";
    Series fnr{"optimal FNR (hull)"};
    fnr.color = "#d62728";
    fnr.dashed = true;
    for (const auto& row : table.rows) {
      const double a = to_real(row[ca], "alpha");
      mfnr.points.emplace_back(a, to_real(row[cm], "mfnr_star"));
      fnr.points.emplace_back(a, to_real(row[cf], "fnr_star"));
    }
    spec.series = {std::move(mfnr), std::move(fnr)};
    spec.title = "Tradeoff frontier, " + meta_or("model", "?") + ", pi0=" + meta_or("pi0", "?");
    spec.x_label = "FDR budget alpha";
    spec.y_label = "optimal FNR";
  } else {
    const std::size_t ca = table.column("alpha");
    const std::size_t cp = table.column("procedure");
    const std::size_t cf = table.column("fnr");
    static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                                     "#8c564b", "#e377c2"};
    std::vector<Series> series;
    for (const auto& row : table.rows) {
      const std::string& name = row[cp];
      auto si = std::find_if(series.begin(), series.end(),
                             [&](const Series& s) { return s.label == name; });
      if (si == series.end()) {
        Series s{name};
        s.color = kPalette[series.size() % std::size(kPalette)];
        s.markers = true;
        series.push_back(std::move(s));
        si = series.end() - 1;
      }
      si->points.emplace_back(to_real(row[ca], "alpha"), to_real(row[cf], "fnr"));
    }

    const std::string model_spec = meta_or("model", "");
    if (model_spec.empty()) {
      throw std::runtime_error("'" + csv_path + "' is missing the model metadata");
    }
    const MixtureModel model = parse_model_spec(model_spec, to_real(meta_or("pi0", ""), "pi0"));
    const LfdrLaw law(model);
    const TradeoffCurve curve = fnr_star_curve(law, default_alpha_grid(law));
    double lo = 1.0;
    double hi = 0.0;
    for (const auto& s : series) {
      for (const auto& [a, y] : s.points) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
    }
    Series theory_m{"optimal mFNR"};
    theory_m.color = "#999999";
    theory_m.dashed = true;
    Series theory_f{"optimal FNR"};
    theory_f.color = "#333333";
    for (int k = 0; k <= 120; ++k) {
      const double a = lo + (hi - lo) * k / 120.0;
      theory_m.points.emplace_back(a, law.mfnr_star(a));
      theory_f.points.emplace_back(a, curve.fnr_at(a));
    }
    series.push_back(std::move(theory_m));
    series.push_back(std::move(theory_f));
    spec.series = std::move(series);
    spec.title = "FNR against FDR budget, " + model_spec;
    spec.x_label = "FDR budget alpha";
    spec.y_label = "FNR";
  }
  write_svg(spec, out_svg);
}

}  // namespace fdrlim
