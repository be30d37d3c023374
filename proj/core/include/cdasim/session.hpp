#pragma once

#include <map>
#include <string>
#include <vector>

#include "cdasim/order_book.hpp"
#include "cdasim/schedule.hpp"
#include "cdasim/scheduler.hpp"
#include "cdasim/trader.hpp"
#include "cdasim/types.hpp"

namespace cdasim {

// A homogeneous block of traders on one side of the market.
struct TraderGroup {
  std::string strategy;      // GVWY, SHVR, ZIC, ZIP, AA, GDX, ZIPP
  int count{0};
  double reaction_time{1.0};  // relative; only the ratios matter
  StrategyParams params;
};

struct SessionConfig {
  Time duration{330};
  Time assignment_period{30};
  Schedule demand;  // side Bid; count must equal the total buyer count
  Schedule supply;  // side Ask; count must equal the total seller count
  Price max_price{500};
  double tick_display_scale{1.0};  // applied only when rendering output
  SchedulerMode scheduler_mode{SchedulerMode::UniformRandom};
  double pool_resolution{1000.0};
  std::uint64_t seed{0};
  std::vector<TraderGroup> buyers;
  std::vector<TraderGroup> sellers;
};

// Throws ConfigError with a descriptive message on the first problem found.
void validate_session_config(const SessionConfig& cfg);

struct QuoteEvent {
  Time time{0};
  TraderId trader{-1};
  Side side{Side::Bid};
  Price price{0};
  Price limit{0};
  bool executed{false};  // true once this standing quote traded
  bool urgent{false};
};

struct SessionRecord {
  std::vector<Trade> trades;
  std::vector<QuoteEvent> quotes;
  std::vector<std::int64_t> profit_by_trader;  // in ticks
  std::map<std::string, std::int64_t> profit_by_strategy;
  std::vector<std::string> trader_names;
  std::vector<std::string> trader_strategies;
  std::vector<Time> period_starts;
  Equilibrium equilibrium;  // theoretical, from the schedules
};

// Deterministic in (cfg, cfg.seed). A zero duration yields an empty record.
SessionRecord run_session(const SessionConfig& cfg);

}  // namespace cdasim
