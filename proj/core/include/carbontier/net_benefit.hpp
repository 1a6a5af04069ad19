#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carbontier/emissions.hpp"
#include "carbontier/utility_model.hpp"

namespace carbontier {

/// Step sizes of the exhaustive (accuracy, latency) search. Grids span the
/// emissions-model domains inclusively.
struct SearchGrid {
  double accuracy_step = 0.0005;
  double latency_step = 0.0005;

  void validate() const;
};

/// Ascending price grid {0, step, 2*step, ..., max_price} scanned when
/// searching for the smallest sufficient incentive.
struct PriceGrid {
  double step = 0.005;
  double max_price = 2.0;

  void validate() const;
};

/// A fully evaluated service choice: the QoE pair, its reduction
/// decomposition, utility, carbon charge and net benefit.
struct OptimalChoice {
  double accuracy = 1.0;
  double latency = 1.0;
  double reduction = 0.0;
  double reduction_from_accuracy = 0.0;
  double reduction_from_latency = 0.0;
  double utility = 0.0;
  double charge = 0.0;
  double net_benefit = 0.0;
};

// price * (1 - reduction). Throws std::domain_error for reduction outside
// [0, 1] or negative price.
double charge(double reduction, double price);

// Evaluate (not optimize) the net benefit at one service point.
OptimalChoice net_benefit_at(const QoEPoint& point, const UserProfile& profile,
                             const EmissionsModel& model, double price);

// Exact argmax of the net benefit over the declared grid. Ties are broken
// by larger reduction, then larger accuracy, then smaller latency.
OptimalChoice optimize_choice(const UserProfile& profile, const EmissionsModel& model,
                              double price, const SearchGrid& grid = {});

// Smallest grid price whose optimal choice reaches target_reduction;
// nullopt if even the maximum grid price falls short. Throws
// std::invalid_argument for targets outside [0, max_reduction].
std::optional<double> min_incentive_for_reduction(const UserProfile& profile,
                                                  const EmissionsModel& model,
                                                  double target_reduction,
                                                  const PriceGrid& prices = {},
                                                  const SearchGrid& grid = {});

struct NamedProfile {
  std::string name;
  UserProfile profile;
};

// The four built-in user types: hq/green crossed with accuracy weights
// 0.5 and 0.9.
std::vector<NamedProfile> preset_profiles();

struct SweepRow {
  std::string profile_name;
  UserProfile profile;
  double price = 0.0;
  OptimalChoice choice{};
};

// One optimal choice per (profile, price), in input order.
std::vector<SweepRow> sweep_incentives(const std::vector<NamedProfile>& profiles,
                                       const std::vector<double>& prices,
                                       const EmissionsModel& model,
                                       const SearchGrid& grid = {});

}  // namespace carbontier
