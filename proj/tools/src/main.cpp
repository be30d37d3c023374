#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "cdasim/config_io.hpp"
#include "cdasim/experiment.hpp"
#include "cdasim/profiling.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"cdasim: deterministic continuous double auction market simulator"};
  app.require_subcommand(1);

  // run
  std::string run_target;
  int trials = 0;
  std::uint64_t seed = 12345;
  std::string out_dir = "out";
  std::string data_dir = "data";
  int parallel = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* run = app.add_subcommand("run", "Run a preset experiment or a JSON session config");
  run->add_option("target", run_target, "Preset name or path to a config file")->required();
  run->add_option("--trials", trials, "Trials per configuration point");
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--data-dir", data_dir, "Directory holding bundled data tables");
  run->add_option("--parallel", parallel, "Worker thread count");

  // validate
  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a JSON session config");
  validate->add_option("file", validate_path, "Path to the config file")->required();

  // presets
  auto* presets = app.add_subcommand("presets", "List the bundled experiment presets");

  // profile-strategies
  int calls = 100000;
  auto* profile = app.add_subcommand("profile-strategies",
                                     "Measure per-call strategy hook latencies");
  profile->add_option("--calls", calls, "Samples per hook");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      cdasim::Experiment exp;
      if (cdasim::is_preset(run_target)) {
        exp = cdasim::make_preset(run_target, data_dir);
      } else {
        const auto cfg = cdasim::load_session_config(run_target);
        exp = cdasim::experiment_from_config(cfg, fs::path(run_target).stem().string());
      }
      if (trials <= 0) trials = exp.default_trials;
      const auto res = cdasim::run_experiment(exp, trials, seed, parallel);
      cdasim::write_experiment_output(res, exp, out_dir);

      std::printf("experiment %s: %d trial(s) per point\n", res.experiment.c_str(), res.trials);
      for (const auto& p : res.points) {
        std::printf("  point %s (trades in trial 0: %zu)\n", p.point.c_str(),
                    p.first_trial.trades.size());
        for (const auto& [strat, vals] : p.per_trial_profit) {
          double sum = 0.0;
          for (double v : vals) sum += v;
          std::printf("    %-5s mean profit/trader %.2f ticks\n", strat.c_str(),
                      sum / static_cast<double>(vals.size()));
        }
      }
      for (const auto& c : res.comparisons) {
        std::printf("  %s:%s vs %s:%s (%s) p=%.4g%s\n", c.comparison.point_a.c_str(),
                    c.comparison.strategy_a.c_str(), c.comparison.point_b.c_str(),
                    c.comparison.strategy_b.c_str(), c.comparison.test.c_str(), c.p_value,
                    c.p_value < 0.05 ? " *" : "");
      }
      std::printf("output written to %s\n",
                  (fs::path(out_dir) / res.experiment).string().c_str());
      return 0;
    }
    if (*validate) {
      const auto cfg = cdasim::load_session_config(validate_path);
      std::printf("%s", cdasim::session_config_to_json(cfg).c_str());
      std::fprintf(stderr, "config is valid\n");
      return 0;
    }
    if (*presets) {
      for (const auto& name : cdasim::preset_names()) {
        try {
          const auto exp = cdasim::make_preset(name, data_dir);
          std::printf("%-22s %s (default trials: %d)\n", name.c_str(), exp.description.c_str(),
                      exp.default_trials);
        } catch (const cdasim::ConfigError&) {
          std::printf("%-22s (needs --data-dir pointing at the bundled data tables)\n",
                      name.c_str());
        }
      }
      return 0;
    }
    if (*profile) {
      const auto profiles = cdasim::profile_strategies(calls);
      std::printf("%-6s %14s %14s\n", "strat", "quote ns/call", "respond ns/call");
      for (const auto& p : profiles)
        std::printf("%-6s %14.1f %14.1f\n", p.strategy.c_str(), p.mean_quote_ns,
                    p.mean_respond_ns);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
