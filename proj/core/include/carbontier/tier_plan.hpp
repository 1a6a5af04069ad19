#pragma once

#include <compare>
#include <string>
#include <vector>

#include "carbontier/net_benefit.hpp"

namespace carbontier {

/// Calendar date, ISO-8601 (YYYY-MM-DD) on the wire.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  // Strict "YYYY-MM-DD" parse with calendar validation.
  static Date parse(const std::string& text);

  std::string to_string() const;
};

/// Grid carbon intensity for one day, gCO2eq/kWh.
struct DailyIntensity {
  Date date{};
  double intensity = 0.0;  // > 0
};

// Reduction needed so that intensity * (1 - r) <= threshold, floored at 0.
double required_reduction(double intensity, double threshold);

/// Everything needed to plan a day: the intensity cap, the user type the
/// plan is designed for, and the search configuration.
struct TierConfig {
  double threshold = 220.0;  // gCO2eq/kWh
  UserProfile profile = UserProfile::high_quality();
  EmissionsModel model = EmissionsModel::fit();
  PriceGrid prices{};
  SearchGrid grid{};

  void validate() const;
};

/// Per-day outcome. Days at or below the threshold keep full QoE at zero
/// price. Days whose required reduction cannot be met carry the
/// max-price choice with feasible = false.
struct DayPlan {
  Date date{};
  double intensity = 0.0;
  double required_reduction = 0.0;
  double price = 0.0;
  OptimalChoice choice{};
  bool feasible = true;
};

DayPlan plan_day(const DailyIntensity& day, const TierConfig& config);

/// Aggregated two-tier subscription plan. The promise is worst-case over
/// low-tier (priced) days; the discount is the charge-relative saving
/// sum(price * reduction) / sum(price) over those days.
struct TierPlan {
  std::vector<DayPlan> days;
  double low_tier_fraction = 0.0;
  double promised_accuracy = 1.0;
  double promised_latency = 1.0;
  double discount = 0.0;
  int infeasible_days = 0;
  double absolute_saving = 0.0;  // sum(price * reduction) / #days
};

// Plans every day (canonical date order) and folds the aggregates.
// Throws on an empty series or duplicate dates.
TierPlan design_tier(std::vector<DailyIntensity> series, const TierConfig& config);

}  // namespace carbontier
