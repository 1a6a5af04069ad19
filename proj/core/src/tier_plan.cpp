#include "carbontier/tier_plan.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace carbontier {

namespace {

bool is_leap(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static const int days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap(year)) return 29;
  return days[month - 1];
}

bool all_digits(const std::string& s, std::size_t from, std::size_t count) {
  for (std::size_t i = from; i < from + count; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Date Date::parse(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !all_digits(text, 0, 4) || !all_digits(text, 5, 2) || !all_digits(text, 8, 2))
    throw std::invalid_argument("date '" + text + "' is not ISO-8601 (YYYY-MM-DD)");
  Date d;
  d.year = std::stoi(text.substr(0, 4));
  d.month = std::stoi(text.substr(5, 2));
  d.day = std::stoi(text.substr(8, 2));
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month))
    throw std::invalid_argument("date '" + text + "' is not a valid calendar date");
  return d;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

double required_reduction(double intensity, double threshold) {
  if (!(intensity > 0.0)) throw std::domain_error("carbon intensity must be > 0");
  if (!(threshold > 0.0)) throw std::domain_error("threshold must be > 0");
  return std::max(0.0, 1.0 - threshold / intensity);
}

void TierConfig::validate() const {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be > 0");
  profile.validate();
  model.validate();
  prices.validate();
  grid.validate();
}

DayPlan plan_day(const DailyIntensity& day, const TierConfig& config) {
  config.validate();
  DayPlan plan;
  plan.date = day.date;
  plan.intensity = day.intensity;
  plan.required_reduction = required_reduction(day.intensity, config.threshold);

  if (plan.required_reduction == 0.0) {
    plan.price = 0.0;
    plan.choice = net_benefit_at({1.0, 1.0}, config.profile, config.model, 0.0);
    plan.feasible = true;
    return plan;
  }

  std::optional<double> price;
  if (plan.required_reduction <= config.model.max_reduction)
    price = min_incentive_for_reduction(config.profile, config.model, plan.required_reduction,
                                        config.prices, config.grid);
  if (price) {
    plan.price = *price;
    plan.choice = optimize_choice(config.profile, config.model, plan.price, config.grid);
    plan.feasible = plan.choice.reduction >= plan.required_reduction;
  } else {
    // Not reachable at any grid price: report the strongest incentive's
    // choice so the shortfall is visible.
    plan.price = config.prices.max_price;
    plan.choice = optimize_choice(config.profile, config.model, plan.price, config.grid);
    plan.feasible = false;
  }
  return plan;
}

TierPlan design_tier(std::vector<DailyIntensity> series, const TierConfig& config) {
  if (series.empty()) throw std::invalid_argument("intensity series is empty");
  std::sort(series.begin(), series.end(),
            [](const DailyIntensity& a, const DailyIntensity& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < series.size(); ++i)
    if (series[i].date == series[i - 1].date)
      throw std::invalid_argument("duplicate date " + series[i].date.to_string());

  TierPlan plan;
  plan.days.reserve(series.size());
  for (const DailyIntensity& day : series) plan.days.push_back(plan_day(day, config));

  int low_tier = 0;
  double price_sum = 0.0;
  double saving_sum = 0.0;
  double min_accuracy = 1.0;
  double max_latency = 1.0;
  for (const DayPlan& day : plan.days) {
    if (day.price > 0.0) {
      ++low_tier;
      price_sum += day.price;
      saving_sum += day.price * day.choice.reduction;
      min_accuracy = std::min(min_accuracy, day.choice.accuracy);
      max_latency = std::max(max_latency, day.choice.latency);
    }
    if (!day.feasible) ++plan.infeasible_days;
  }
  const double n_days = static_cast<double>(plan.days.size());
  plan.low_tier_fraction = static_cast<double>(low_tier) / n_days;
  if (low_tier > 0) {
    plan.promised_accuracy = min_accuracy;
    plan.promised_latency = max_latency;
    plan.discount = saving_sum / price_sum;
  } else {
    plan.promised_accuracy = 1.0;
    plan.promised_latency = 1.0;
    plan.discount = 0.0;
  }
  plan.absolute_saving = saving_sum / n_days;
  return plan;
}

}  // namespace carbontier
