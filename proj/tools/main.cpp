#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fdrlim/config.hpp"
#include "fdrlim/errors.hpp"
#include "fdrlim/harness.hpp"

namespace {

constexpr const char* kModelHelp =
    "Model spec: gaussian(mu=<m>), usqrt, ustep(cut=<c>), ucustom(file=<path>)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple testing tradeoff curves, simulations and decision rules"};
  app.set_version_flag("--version", "1.0.0");
  app.require_subcommand(1);

  fdrlim::CurvesRequest curves;
  std::string curves_alphas;
  CLI::App* c = app.add_subcommand("curves", "Tabulate the oracle mFNR/FNR tradeoff");
  c->add_option("--model", curves.model, kModelHelp)->capture_default_str();
  c->add_option("--pi0", curves.pi0, "Null proportion")->capture_default_str();
  c->add_option("--alphas", curves_alphas, "Levels, lo:hi:step or a comma list (default: dense grid)");
  c->add_option("--out", curves.out, "Output CSV path")->capture_default_str();

  std::string sim_config;
  std::vector<std::pair<std::string, std::string>> sim_overrides;
  CLI::App* s = app.add_subcommand("simulate", "Monte Carlo FDR/FNR study");
  s->add_option("--config", sim_config, "key=value config file; flags below override it");
  sim_overrides.reserve(9);  // CLI11 keeps references into the slots
  for (const char* key : {"model", "pi0", "alphas", "procedures", "n", "trials", "seed",
                          "threads", "out"}) {
    sim_overrides.emplace_back(key, "");
    std::string& slot = sim_overrides.back().second;
    std::string help = std::string("Config key '") + key + "'";
    if (std::string(key) == "procedures") {
      help = "Comma list of np, oracle, trivial, bh, suncai, datadriven;"
             " the last two accept (est=grenander|kde|kde(h=..)|oracle)";
    } else if (std::string(key) == "model") {
      help = kModelHelp;
    } else if (std::string(key) == "alphas") {
      help = "Levels, lo:hi:step or a comma list";
    }
    s->add_option("--" + std::string(key), slot, help);
  }

  fdrlim::DecideRequest decide;
  CLI::App* d = app.add_subcommand("decide", "Apply one procedure to a file of observations");
  d->add_option("--in", decide.input, "Input file, whitespace separated reals")->required();
  d->add_option("--proc", decide.procedure, "Procedure spec")->capture_default_str();
  d->add_option("--alpha", decide.alpha, "FDR budget")->capture_default_str();
  d->add_option("--pi0", decide.pi0, "Null proportion")->capture_default_str();
  d->add_option("--null", decide.null_spec,
                "Model spec, or the aliases uniform / gaussian (np and oracle need the full spec)")
      ->capture_default_str();
  d->add_option("--seed", decide.seed, "RNG seed")->capture_default_str();
  d->add_option("--out", decide.out, "Output path (default: stdout)");

  std::string plot_in, plot_kind, plot_out;
  CLI::App* p = app.add_subcommand("plot", "Render a curves or simulation CSV as SVG");
  p->add_option("--in", plot_in, "CSV produced by curves or simulate")->required();
  p->add_option("--kind", plot_kind, "curves | simulation")->required();
  p->add_option("--out", plot_out, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c->parsed()) {
      if (c->count("--alphas")) curves.alphas = fdrlim::parse_alpha_grid(curves_alphas);
      fdrlim::run_curves(curves);
      std::cout << "wrote " << curves.out << "\n";
    } else if (s->parsed()) {
      fdrlim::ExperimentConfig cfg;
      if (s->count("--config")) cfg = fdrlim::load_config_file(sim_config);
      for (const auto& [key, value] : sim_overrides) {
        if (s->count("--" + key)) fdrlim::apply_config_value(cfg, key, value);
      }
      fdrlim::run_simulation(cfg);
      std::cout << "wrote " << cfg.out << "\n";
    } else if (d->parsed()) {
      fdrlim::run_decide(decide);
      if (!decide.out.empty() && decide.out != "-") {
        std::cout << "wrote " << decide.out << "\n";
      }
    } else if (p->parsed()) {
      fdrlim::PlotKind kind;
      if (plot_kind == "curves") {
        kind = fdrlim::PlotKind::kCurves;
      } else if (plot_kind == "simulation") {
        kind = fdrlim::PlotKind::kSimulation;
      } else {
        throw fdrlim::ConfigError("--kind must be curves or simulation, got '" + plot_kind +
                                  "'");
      }
      fdrlim::emit_plot(plot_in, kind, plot_out);
      std::cout << "wrote " << plot_out << "\n";
    }
  } catch (const fdrlim::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
