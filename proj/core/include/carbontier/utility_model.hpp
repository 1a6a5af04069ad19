#pragma once

namespace carbontier {

/// Fixed shape constants of the accuracy and latency utility curves.
/// The defaults cover the normalized accuracy/latency ranges of the
/// built-in emissions trade-off table.
struct UtilityConstants {
  double accuracy_scale = 6.5;
  double latency_offset = 7.0;
  double latency_steepness = 70.0;
  double log_base = 10.0;

  // Accuracy utility is defined only for a strictly above this bound.
  double accuracy_domain_min() const { return 1.0 - 1.0 / accuracy_scale; }

  void validate() const;
};

/// One user type: weight of accuracy vs latency, accuracy sensitivity
/// (symbol B in reports) and latency tolerance (symbol X).
struct UserProfile {
  double accuracy_weight = 0.5;      // in [0, 1]
  double accuracy_sensitivity = 2.0; // > 0
  double latency_tolerance = 1.0;    // >= 1
  UtilityConstants constants{};

  static UserProfile high_quality(double accuracy_weight = 0.5);
  static UserProfile green(double accuracy_weight = 0.5);

  void validate() const;
};

/// A normalized (accuracy, latency) service point. accuracy = 1 and
/// latency = 1 are the best (highest-emissions) values.
struct QoEPoint {
  double accuracy = 1.0;
  double latency = 1.0;
};

// Increasing concave accuracy utility; equals 1 at accuracy = 1.
// Throws std::domain_error outside (1 - 1/accuracy_scale, 1].
double accuracy_utility(double accuracy, const UserProfile& profile);

// Flipped sigmoid latency utility; equals 0.5 exactly at
// latency = latency_tolerance + 0.1. Throws std::domain_error for
// latency < 1.
double latency_utility(double latency, const UserProfile& profile);

// accuracy_weight * accuracy_utility + (1 - accuracy_weight) * latency_utility.
double total_utility(const QoEPoint& point, const UserProfile& profile);

// Closed-form inverse of accuracy_utility for utility in (0, 1].
double accuracy_for_utility(double utility, const UserProfile& profile);

// Closed-form inverse of latency_utility for utility in (0, 1).
double latency_for_utility(double utility, const UserProfile& profile);

}  // namespace carbontier
