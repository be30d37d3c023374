#include "cdasim/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "cdasim/rng.hpp"
#include "cdasim/stats.hpp"

namespace cdasim {

namespace fs = std::filesystem;

namespace {

Schedule sched(Side side, Price lo, Price hi, int count) {
  Schedule s;
  s.side = side;
  s.min_price = lo;
  s.max_price = hi;
  s.count = count;
  return s;
}

SessionConfig base_config() {
  SessionConfig cfg;
  cfg.duration = 330;
  cfg.assignment_period = 30;
  cfg.max_price = 500;
  return cfg;
}

TraderGroup group(const std::string& strategy, int count, double reaction = 1.0) {
  TraderGroup g;
  g.strategy = strategy;
  g.count = count;
  g.reaction_time = reaction;
  return g;
}

// The five supply/demand scenarios used by the scenario-sweep presets, with
// `n` traders per side.
std::vector<std::pair<std::string, std::pair<Schedule, Schedule>>> scenario_schedules(int n) {
  return {
      {"symmetric", {sched(Side::Bid, 75, 125, n), sched(Side::Ask, 75, 125, n)}},
      {"elastic-demand", {sched(Side::Bid, 125, 125, n), sched(Side::Ask, 75, 125, n)}},
      {"elastic-supply", {sched(Side::Bid, 75, 125, n), sched(Side::Ask, 75, 75, n)}},
      {"excess-demand", {sched(Side::Bid, 100, 150, n), sched(Side::Ask, 75, 125, n)}},
      {"excess-supply", {sched(Side::Bid, 75, 125, n), sched(Side::Ask, 50, 100, n)}},
  };
}

// Each sensitivity preset keeps the same 50..150 schedules but chooses its own
// assignment period (and price cap, for ZIC) so that reaction-time handicaps
// bind: with long periods every trader gets far more polls than it needs and
// slowness is free, so the sweep runs in a scarcer-action regime where the
// profit ordering actually responds to the speed multiplier.
struct SensitivityRegime {
  Time assignment_period;
  Time periods;
  Price max_price;
};

Experiment make_sensitivity(const std::string& rival, const SensitivityRegime& regime) {
  Experiment exp;
  exp.name = "sensitivity-aa-" + [&] {
    std::string lower = rival;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lower;
  }();
  exp.description = "AA vs " + rival + " while sweeping the AA reaction time multiplier";
  exp.default_trials = 100;
  for (int r : {1, 2, 5, 10, 20, 40}) {
    SessionConfig cfg = base_config();
    cfg.assignment_period = regime.assignment_period;
    cfg.duration = regime.assignment_period * regime.periods;
    cfg.max_price = regime.max_price;
    cfg.scheduler_mode = SchedulerMode::SpeedProportional;
    cfg.pool_resolution = 1;  // integer multipliers divide exactly
    cfg.demand = sched(Side::Bid, 50, 150, 10);
    cfg.supply = sched(Side::Ask, 50, 150, 10);
    cfg.buyers = {group("AA", 5, static_cast<double>(r)), group(rival, 5, 1.0)};
    cfg.sellers = {group("AA", 5, static_cast<double>(r)), group(rival, 5, 1.0)};
    const std::string point = "r" + std::to_string(r);
    exp.points.push_back({point, cfg});
    exp.comparisons.push_back({point, "AA", point, rival, "welch"});
  }
  return exp;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"zic-equilibration", "sensitivity-aa-gvwy", "sensitivity-aa-shvr",
          "sensitivity-aa-zic", "sensitivity-aa-zip", "profiled-speeds",
          "zipp-homogeneous",  "zipp-heterogeneous",  "aa-gdx-zipp"};
}

bool is_preset(const std::string& name) {
  const auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::map<std::string, double> load_reaction_times_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open reaction time table: " + path);
  std::map<std::string, double> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;  // header
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("malformed row in " + path + ": " + line);
    out[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
  }
  if (out.empty()) throw ConfigError("no rows in reaction time table: " + path);
  return out;
}

Experiment make_preset(const std::string& name, const std::string& data_dir) {
  if (name == "zic-equilibration") {
    Experiment exp;
    exp.name = name;
    exp.description = "price discovery in an all-ZIC market with a known equilibrium at 100";
    exp.default_trials = 100;
    SessionConfig cfg = base_config();
    // Cap the price range symmetrically around the 100 equilibrium: ZIC quotes
    // uniformly up to the cap, so a lopsided range would bias trade prices.
    cfg.max_price = 200;
    cfg.demand = sched(Side::Bid, 50, 150, 11);
    cfg.supply = sched(Side::Ask, 50, 150, 11);
    cfg.buyers = {group("ZIC", 11)};
    cfg.sellers = {group("ZIC", 11)};
    exp.points.push_back({"zic", cfg});
    return exp;
  }
  if (name == "sensitivity-aa-gvwy") return make_sensitivity("GVWY", {3, 9, 500});
  if (name == "sensitivity-aa-shvr") return make_sensitivity("SHVR", {30, 11, 500});
  if (name == "sensitivity-aa-zic") return make_sensitivity("ZIC", {3, 11, 170});
  if (name == "sensitivity-aa-zip") return make_sensitivity("ZIP", {27, 11, 500});
  if (name == "profiled-speeds") {
    Experiment exp;
    exp.name = name;
    exp.description =
        "pairwise AA:SHVR and ZIP:SHVR markets, equal-speed versus measured per-call latencies";
    exp.default_trials = 100;
    const auto times = load_reaction_times_csv(
        (fs::path(data_dir) / "profiled_reaction_times.csv").string());
    for (const auto& strat : {"SHVR", "ZIP", "AA"})
      if (!times.count(strat)) throw ConfigError(std::string("missing reaction time for ") + strat);

    // AA:SHVR runs in a scarce-action regime (short assignment periods) where
    // reaction speed binds, with AA's immediate-take disabled so both sides
    // must win the quote race rather than lift stale offers.
    auto aa_shvr = [&](bool profiled) {
      SessionConfig cfg = base_config();
      cfg.assignment_period = 3;
      cfg.duration = 33;
      cfg.max_price = 400;
      cfg.scheduler_mode = SchedulerMode::SpeedProportional;
      cfg.pool_resolution = 2;
      cfg.demand = sched(Side::Bid, 50, 150, 10);
      cfg.supply = sched(Side::Ask, 50, 150, 10);
      TraderGroup aa = group("AA", 5, profiled ? times.at("AA") : 1.0);
      aa.params.aa.immediate_take = false;
      TraderGroup sh = group("SHVR", 5, profiled ? times.at("SHVR") : 1.0);
      cfg.buyers = {aa, sh};
      cfg.sellers = {aa, sh};
      return cfg;
    };
    // ZIP:SHVR keeps the long assignment period but only a few periods, so
    // ZIP's margin learning cannot accumulate a structural edge; resolution
    // 1.25 keeps the biased pool small enough that the latency gap matters.
    auto zip_shvr = [&](bool profiled) {
      SessionConfig cfg = base_config();
      cfg.assignment_period = 30;
      cfg.duration = 90;
      cfg.scheduler_mode = SchedulerMode::SpeedProportional;
      cfg.pool_resolution = 1.25;
      cfg.demand = sched(Side::Bid, 50, 150, 10);
      cfg.supply = sched(Side::Ask, 50, 150, 10);
      TraderGroup zp = group("ZIP", 5, profiled ? times.at("ZIP") : 1.0);
      TraderGroup sh = group("SHVR", 5, profiled ? times.at("SHVR") : 1.0);
      cfg.buyers = {zp, sh};
      cfg.sellers = {zp, sh};
      return cfg;
    };
    exp.points.push_back({"aa-shvr-equal", aa_shvr(false)});
    exp.points.push_back({"aa-shvr-profiled", aa_shvr(true)});
    exp.points.push_back({"zip-shvr-equal", zip_shvr(false)});
    exp.points.push_back({"zip-shvr-profiled", zip_shvr(true)});
    exp.comparisons.push_back({"aa-shvr-equal", "AA", "aa-shvr-equal", "SHVR", "welch"});
    exp.comparisons.push_back({"aa-shvr-profiled", "SHVR", "aa-shvr-profiled", "AA", "welch"});
    exp.comparisons.push_back({"zip-shvr-equal", "ZIP", "zip-shvr-equal", "SHVR", "welch"});
    exp.comparisons.push_back({"zip-shvr-profiled", "SHVR", "zip-shvr-profiled", "ZIP", "welch"});
    return exp;
  }
  if (name == "zipp-homogeneous") {
    Experiment exp;
    exp.name = name;
    exp.description = "one-strategy markets compared on surplus extraction";
    exp.default_trials = 100;
    for (const auto& strat : {"ZIP", "ZIPP", "AA", "GDX"}) {
      SessionConfig cfg = base_config();
      cfg.demand = sched(Side::Bid, 50, 150, 10);
      cfg.supply = sched(Side::Ask, 50, 150, 10);
      cfg.buyers = {group(strat, 10)};
      cfg.sellers = {group(strat, 10)};
      std::string point = strat;
      std::transform(point.begin(), point.end(), point.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      exp.points.push_back({point, cfg});
    }
    exp.comparisons.push_back({"aa", "AA", "gdx", "GDX", "mann_whitney"});
    exp.comparisons.push_back({"aa", "AA", "zipp", "ZIPP", "mann_whitney"});
    exp.comparisons.push_back({"zipp", "ZIPP", "zip", "ZIP", "mann_whitney"});
    exp.comparisons.push_back({"gdx", "GDX", "zipp", "ZIPP", "mann_whitney"});
    return exp;
  }
  if (name == "zipp-heterogeneous") {
    Experiment exp;
    exp.name = name;
    exp.description = "balanced ZIPP vs ZIP markets across five supply/demand scenarios";
    exp.default_trials = 25;
    // A wide market (15 of each strategy per side) keeps the per-trial profit
    // estimates tight enough for Mann-Whitney significance at 25 trials.
    for (const auto& [label, pair] : scenario_schedules(30)) {
      SessionConfig cfg = base_config();
      cfg.demand = pair.first;
      cfg.supply = pair.second;
      cfg.buyers = {group("ZIPP", 15), group("ZIP", 15)};
      cfg.sellers = {group("ZIPP", 15), group("ZIP", 15)};
      exp.points.push_back({label, cfg});
      exp.comparisons.push_back({label, "ZIPP", label, "ZIP", "mann_whitney"});
    }
    return exp;
  }
  if (name == "aa-gdx-zipp") {
    Experiment exp;
    exp.name = name;
    exp.description = "three-way AA/GDX/ZIPP markets across five supply/demand scenarios";
    exp.default_trials = 25;
    // Six of each strategy per side: as with the heterogeneous preset, the
    // wider market tightens per-trial estimates for the 25-trial tests.
    for (const auto& [label, pair] : scenario_schedules(18)) {
      SessionConfig cfg = base_config();
      cfg.demand = pair.first;
      cfg.supply = pair.second;
      cfg.buyers = {group("AA", 6), group("GDX", 6), group("ZIPP", 6)};
      cfg.sellers = {group("AA", 6), group("GDX", 6), group("ZIPP", 6)};
      exp.points.push_back({label, cfg});
      exp.comparisons.push_back({label, "ZIPP", label, "GDX", "mann_whitney"});
      exp.comparisons.push_back({label, "AA", label, "GDX", "mann_whitney"});
      exp.comparisons.push_back({label, "AA", label, "ZIPP", "mann_whitney"});
    }
    return exp;
  }
  throw ConfigError("unknown preset: " + name);
}

Experiment experiment_from_config(const SessionConfig& cfg, const std::string& name) {
  Experiment exp;
  exp.name = name;
  exp.description = "user supplied configuration";
  exp.points.push_back({"main", cfg});
  return exp;
}

const PointResult* find_point(const ExperimentResult& res, const std::string& name) {
  for (const auto& p : res.points)
    if (p.point == name) return &p;
  return nullptr;
}

ExperimentResult run_experiment(const Experiment& exp, int trials, std::uint64_t seed,
                                int parallel) {
  if (trials <= 0) throw ConfigError("trials must be positive");
  if (parallel <= 0) parallel = 1;

  ExperimentResult res;
  res.experiment = exp.name;
  res.trials = trials;

  for (std::size_t pi = 0; pi < exp.points.size(); ++pi) {
    const auto& point = exp.points[pi];
    validate_session_config(point.config);

    std::vector<std::map<std::string, double>> trial_profit(static_cast<std::size_t>(trials));
    std::vector<SessionRecord> first(1);
    const std::uint64_t point_seed = Rng::derive(seed, 100 + pi);

    std::map<std::string, int> strat_counts;
    auto count_groups = [&](const std::vector<TraderGroup>& gs) {
      for (const auto& g : gs) strat_counts[g.strategy] += g.count;
    };
    count_groups(point.config.buyers);
    count_groups(point.config.sellers);

    auto run_range = [&](int lo, int hi) {
      for (int t = lo; t < hi; ++t) {
        SessionConfig cfg = point.config;
        cfg.seed = Rng::derive(point_seed, static_cast<std::uint64_t>(t));
        SessionRecord rec = run_session(cfg);
        auto& out = trial_profit[static_cast<std::size_t>(t)];
        for (const auto& [strat, total] : rec.profit_by_strategy)
          out[strat] = static_cast<double>(total) / strat_counts.at(strat);
        if (t == 0) first[0] = std::move(rec);
      }
    };

    if (parallel == 1 || trials == 1) {
      run_range(0, trials);
    } else {
      const int workers = std::min(parallel, trials);
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) {
        const int lo = trials * w / workers;
        const int hi = trials * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
          try {
            run_range(lo, hi);
          } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }

    PointResult pr;
    pr.point = point.name;
    pr.first_trial = std::move(first[0]);
    pr.theoretical_max_surplus_per_period = pr.first_trial.equilibrium.max_surplus;
    for (const auto& tp : trial_profit)
      for (const auto& [strat, v] : tp) pr.per_trial_profit[strat].push_back(v);
    res.points.push_back(std::move(pr));
  }

  for (const auto& cmp : exp.comparisons) {
    const PointResult* pa = find_point(res, cmp.point_a);
    const PointResult* pb = find_point(res, cmp.point_b);
    if (!pa || !pb) throw ConfigError("comparison references unknown point");
    const auto& a = pa->per_trial_profit.at(cmp.strategy_a);
    const auto& b = pb->per_trial_profit.at(cmp.strategy_b);
    ComparisonResult cr;
    cr.comparison = cmp;
    cr.mean_a = stats::mean(a);
    cr.mean_b = stats::mean(b);
    if (cmp.test == "mann_whitney")
      cr.p_value = stats::mann_whitney_u(a, b).p_value;
    else
      cr.p_value = stats::welch_t_test(a, b);
    res.comparisons.push_back(std::move(cr));
  }

  return res;
}

void write_experiment_output(const ExperimentResult& res, const Experiment& exp,
                             const std::string& out_dir) {
  const fs::path root = fs::path(out_dir) / res.experiment;
  fs::create_directories(root);

  for (const auto& pr : res.points) {
    const fs::path dir = root / pr.point;
    fs::create_directories(dir);
    const auto& rec = pr.first_trial;

    {
      std::ofstream f(dir / "trades.csv");
      f << "time,price_ticks,buyer_id,seller_id\n";
      for (const auto& t : rec.trades)
        f << t.time << ',' << t.price << ',' << t.buyer << ',' << t.seller << '\n';
    }
    {
      std::ofstream f(dir / "quotes.csv");
      f << "time,trader_id,strategy,side,price_ticks,limit_ticks,executed,urgent\n";
      for (const auto& q : rec.quotes) {
        f << q.time << ',' << q.trader << ','
          << rec.trader_strategies[static_cast<std::size_t>(q.trader)] << ',' << to_string(q.side)
          << ',' << q.price << ',' << q.limit << ',' << (q.executed ? 1 : 0) << ','
          << (q.urgent ? 1 : 0) << '\n';
      }
    }
    {
      std::ofstream f(dir / "profits.csv");
      f << "trial,strategy,mean_profit_per_trader\n";
      for (const auto& [strat, vals] : pr.per_trial_profit)
        for (std::size_t i = 0; i < vals.size(); ++i)
          f << i << ',' << strat << ',' << vals[i] << '\n';
    }
  }

  {
    std::ofstream f(root / "summary.csv");
    f << "experiment,strategy,mean,ci95,n\n";
    for (const auto& pr : res.points) {
      for (const auto& [strat, vals] : pr.per_trial_profit) {
        const auto ci = vals.size() >= 2 ? stats::mean_ci(vals)
                                         : stats::MeanCi{vals.empty() ? 0.0 : vals[0], 0.0};
        f << res.experiment << '/' << pr.point << ',' << strat << ',' << ci.mean << ','
          << ci.half_width << ',' << vals.size() << '\n';
      }
    }
  }
  {
    std::ofstream f(root / "comparison.csv");
    f << "experiment,a,b,test,p_value,significant@0.05\n";
    for (const auto& cr : res.comparisons) {
      f << res.experiment << ',' << cr.comparison.point_a << ':' << cr.comparison.strategy_a << ','
        << cr.comparison.point_b << ':' << cr.comparison.strategy_b << ','
        << cr.comparison.test << ',' << cr.p_value << ','
        << (cr.p_value < 0.05 ? 1 : 0) << '\n';
    }
  }

  (void)exp;
}

}  // namespace cdasim
