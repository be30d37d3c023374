#pragma once

#include "cdasim/traders_basic.hpp"

namespace cdasim {

// Pacing components, exposed for unit tests.
// Mean waiting time before the next urgent price concession.
double zipp_lambda(double beta, double alpha, double horizon, double elapsed, double surplus);
// Exponentially distributed wait with mean `lambda`, via inversion of u in [0,1).
double zipp_wait(double lambda, double u);
// Tick step toward the limit given the remaining time.
Price zipp_delta(Price limit, Price prev_quote, Time remaining);

// ZIPP: ZIP with an urgency overlay. While the underlying ZIP price is
// unchanged, an exponential timer runs; once it expires the trader concedes
// toward its limit in steps sized to reach the limit by the deadline, and the
// ZIP margin is re-synchronised to the conceded price.
class ZippTrader : public ZipTrader {
 public:
  ZippTrader(TraderId index, std::string name, const ZipParams& zip, const ZippParams& zipp,
             Price max_price, std::uint64_t seed);

  void on_assignment(const Assignment& a) override;
  void on_fill(const Trade& t) override;
  std::optional<QuoteResult> quote(const QuoteContext& ctx, const LobSnapshot& lob) override;

  // test hooks
  std::optional<Time> next_urgency_time() const { return t_kappa_; }
  std::optional<Price> last_submitted() const { return last_submitted_; }

 private:
  double surplus_for(Price zip_quote) const;
  void arm_timer(Time now, double horizon, double elapsed, Price zip_quote);

  ZippParams zp_;
  std::optional<Time> t_kappa_;
  std::optional<Price> last_submitted_;
  double cum_surplus_{0.0};
};

}  // namespace cdasim
