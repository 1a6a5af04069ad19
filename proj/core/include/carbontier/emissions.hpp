#pragma once

#include <vector>

#include "carbontier/utility_model.hpp"

namespace carbontier {

/// One measured trade-off sample: a normalized accuracy or latency value
/// and the carbon emissions reduction it yields.
struct TradeoffRow {
  double value = 1.0;
  double reduction = 0.0;
};

/// Measured accuracy->reduction and latency->reduction samples. The first
/// row of each list must be the no-degradation anchor (1.0, 0.0).
struct EmissionsTable {
  std::vector<TradeoffRow> accuracy_rows;
  std::vector<TradeoffRow> latency_rows;

  static EmissionsTable defaults();

  void validate() const;
};

// Through-origin least-squares slope of reduction vs accuracy drop (1 - a).
double fit_accuracy(const EmissionsTable& table);

/// Coefficients of the latency reduction quadratic
/// c2 * (d - 1)^2 + c1 * (d - 1), anchored at (1, 0).
struct LatencyFit {
  double linear = 0.0;     // c1
  double quadratic = 0.0;  // c2
};

// Quadratic through the non-anchor latency rows (exact for two rows,
// least squares for more).
LatencyFit fit_latency(const EmissionsTable& table);

/// Reduction decomposition at one service point. Components are reported
/// unclamped; total is capped at the model's max_reduction.
struct ReductionSplit {
  double total = 0.0;
  double from_accuracy = 0.0;
  double from_latency = 0.0;
};

/// Continuous emissions-reduction model fitted from an EmissionsTable.
/// All evaluation is pure; domains default to the table hull and
/// evaluating outside them is an error rather than an extrapolation.
struct EmissionsModel {
  double accuracy_slope = 0.0;
  LatencyFit latency_fit{};
  double max_reduction = 0.80;
  double accuracy_min = 0.88;
  double accuracy_max = 1.0;
  double latency_min = 1.0;
  double latency_max = 1.28;

  static EmissionsModel fit(const EmissionsTable& table = EmissionsTable::defaults());

  // slope * (1 - a), clamped to [0, max_reduction].
  double reduction_from_accuracy(double accuracy) const;

  // c2 * (d - 1)^2 + c1 * (d - 1), clamped below at 0.
  double reduction_from_latency(double latency) const;

  // Lower-latency root of the fitted quadratic. Throws for reductions
  // above peak_latency_reduction().
  double latency_for_reduction(double reduction) const;

  // Largest reduction the latency quadratic can reach (its peak value).
  double peak_latency_reduction() const;

  // Latency at which the quadratic peaks.
  double peak_latency() const;

  ReductionSplit total_reduction(const QoEPoint& point) const;

  void validate() const;
};

}  // namespace carbontier
