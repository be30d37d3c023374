#include "cdasim/config_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cdasim {

using nlohmann::json;

namespace {

template <typename T>
void read_into(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

Schedule parse_schedule(const json& j, Side side, const char* label) {
  if (!j.is_object()) throw ConfigError(std::string(label) + " must be an object");
  Schedule s;
  s.side = side;
  read_into(j, "min_price", s.min_price);
  read_into(j, "max_price", s.max_price);
  read_into(j, "count", s.count);
  if (auto it = j.find("fixed"); it != j.end()) {
    s.fixed = it->get<std::vector<Price>>();
    if (s.count == 0) s.count = static_cast<int>(s.fixed.size());
  }
  return s;
}

void parse_params(const json& j, StrategyParams& p) {
  read_into(j, "shvr_stub_bid", p.shvr_stub_bid);
  if (auto it = j.find("zip"); it != j.end()) {
    read_into(*it, "beta_min", p.zip.beta_min);
    read_into(*it, "beta_max", p.zip.beta_max);
    read_into(*it, "momentum_min", p.zip.momentum_min);
    read_into(*it, "momentum_max", p.zip.momentum_max);
    read_into(*it, "margin_min", p.zip.margin_min);
    read_into(*it, "margin_max", p.zip.margin_max);
    read_into(*it, "perturb_abs", p.zip.perturb_abs);
    read_into(*it, "perturb_rel", p.zip.perturb_rel);
  }
  if (auto it = j.find("aa"); it != j.end()) {
    read_into(*it, "ma_window", p.aa.ma_window);
    read_into(*it, "ma_decay", p.aa.ma_decay);
    read_into(*it, "eta", p.aa.eta);
    read_into(*it, "theta_init", p.aa.theta_init);
    read_into(*it, "theta_min", p.aa.theta_min);
    read_into(*it, "theta_max", p.aa.theta_max);
    read_into(*it, "volatility_gamma", p.aa.volatility_gamma);
    read_into(*it, "lambda_rel", p.aa.lambda_rel);
    read_into(*it, "lambda_abs", p.aa.lambda_abs);
    read_into(*it, "spinup_eq_offset", p.aa.spinup_eq_offset);
    read_into(*it, "immediate_take", p.aa.immediate_take);
  }
  if (auto it = j.find("gdx"); it != j.end()) {
    read_into(*it, "discount", p.gdx.discount);
    read_into(*it, "history_window", p.gdx.history_window);
    read_into(*it, "max_table_cells", p.gdx.max_table_cells);
  }
  if (auto it = j.find("zipp"); it != j.end()) {
    read_into(*it, "alpha", p.zipp.alpha);
    read_into(*it, "beta", p.zipp.beta);
    read_into(*it, "surplus_floor", p.zipp.surplus_floor);
    read_into(*it, "day_deadline", p.zipp.day_deadline);
    read_into(*it, "cumulative_surplus", p.zipp.cumulative_surplus);
  }
}

std::vector<TraderGroup> parse_groups(const json& j, const char* label) {
  if (!j.is_array()) throw ConfigError(std::string(label) + " must be an array");
  std::vector<TraderGroup> groups;
  for (const auto& g : j) {
    TraderGroup tg;
    if (auto it = g.find("strategy"); it != g.end())
      tg.strategy = it->get<std::string>();
    else
      throw ConfigError(std::string(label) + " group missing strategy");
    read_into(g, "count", tg.count);
    read_into(g, "reaction_time", tg.reaction_time);
    if (auto it = g.find("params"); it != g.end()) parse_params(*it, tg.params);
    groups.push_back(std::move(tg));
  }
  return groups;
}

}  // namespace

SessionConfig parse_session_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  static const char* allowed[] = {"duration",       "assignment_period", "max_price",
                                  "tick_display_scale", "scheduler_mode", "pool_resolution",
                                  "seed",           "demand",            "supply",
                                  "buyers",         "sellers"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ConfigError("unknown config key: " + it.key());
  }

  SessionConfig cfg;
  try {
    read_into(j, "duration", cfg.duration);
    read_into(j, "assignment_period", cfg.assignment_period);
    read_into(j, "max_price", cfg.max_price);
    read_into(j, "tick_display_scale", cfg.tick_display_scale);
    read_into(j, "pool_resolution", cfg.pool_resolution);
    read_into(j, "seed", cfg.seed);
    if (auto it = j.find("scheduler_mode"); it != j.end()) {
      const auto mode = it->get<std::string>();
      if (mode == "uniform")
        cfg.scheduler_mode = SchedulerMode::UniformRandom;
      else if (mode == "speed_proportional")
        cfg.scheduler_mode = SchedulerMode::SpeedProportional;
      else
        throw ConfigError("scheduler_mode must be \"uniform\" or \"speed_proportional\"");
    }
    if (auto it = j.find("demand"); it != j.end())
      cfg.demand = parse_schedule(*it, Side::Bid, "demand");
    else
      throw ConfigError("missing demand schedule");
    if (auto it = j.find("supply"); it != j.end())
      cfg.supply = parse_schedule(*it, Side::Ask, "supply");
    else
      throw ConfigError("missing supply schedule");
    if (auto it = j.find("buyers"); it != j.end())
      cfg.buyers = parse_groups(*it, "buyers");
    else
      throw ConfigError("missing buyers");
    if (auto it = j.find("sellers"); it != j.end())
      cfg.sellers = parse_groups(*it, "sellers");
    else
      throw ConfigError("missing sellers");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }

  validate_session_config(cfg);
  return cfg;
}

SessionConfig load_session_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_session_config(ss.str());
}

std::string session_config_to_json(const SessionConfig& cfg) {
  auto schedule_json = [](const Schedule& s) {
    json j;
    if (!s.fixed.empty()) {
      j["fixed"] = s.fixed;
      j["count"] = s.count;
    } else {
      j["min_price"] = s.min_price;
      j["max_price"] = s.max_price;
      j["count"] = s.count;
    }
    return j;
  };
  auto groups_json = [](const std::vector<TraderGroup>& groups) {
    json arr = json::array();
    for (const auto& g : groups) {
      json jg;
      jg["strategy"] = g.strategy;
      jg["count"] = g.count;
      jg["reaction_time"] = g.reaction_time;
      json params;
      const StrategyParams defaults;
      if (g.params.zipp.day_deadline != defaults.zipp.day_deadline)
        params["zipp"]["day_deadline"] = g.params.zipp.day_deadline;
      if (g.params.zipp.cumulative_surplus != defaults.zipp.cumulative_surplus)
        params["zipp"]["cumulative_surplus"] = g.params.zipp.cumulative_surplus;
      if (!params.empty()) jg["params"] = params;
      arr.push_back(std::move(jg));
    }
    return arr;
  };

  json j;
  j["duration"] = cfg.duration;
  j["assignment_period"] = cfg.assignment_period;
  j["max_price"] = cfg.max_price;
  j["tick_display_scale"] = cfg.tick_display_scale;
  j["scheduler_mode"] =
      cfg.scheduler_mode == SchedulerMode::UniformRandom ? "uniform" : "speed_proportional";
  j["pool_resolution"] = cfg.pool_resolution;
  j["seed"] = cfg.seed;
  j["demand"] = schedule_json(cfg.demand);
  j["supply"] = schedule_json(cfg.supply);
  j["buyers"] = groups_json(cfg.buyers);
  j["sellers"] = groups_json(cfg.sellers);
  return j.dump(2) + "\n";
}

}  // namespace cdasim
