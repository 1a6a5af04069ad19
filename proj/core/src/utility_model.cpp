#include "carbontier/utility_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace carbontier {

namespace {

[[noreturn]] void domain_fail(const std::string& msg) { throw std::domain_error(msg); }

}  // namespace

void UtilityConstants::validate() const {
  if (!(accuracy_scale > 0.0)) domain_fail("accuracy_scale must be > 0");
  if (!(latency_steepness > 0.0)) domain_fail("latency_steepness must be > 0");
  if (!(log_base > 1.0)) domain_fail("log_base must be > 1");
}

UserProfile UserProfile::high_quality(double accuracy_weight) {
  UserProfile p;
  p.accuracy_weight = accuracy_weight;
  p.accuracy_sensitivity = 2.0;
  p.latency_tolerance = 1.0;
  return p;
}

UserProfile UserProfile::green(double accuracy_weight) {
  UserProfile p;
  p.accuracy_weight = accuracy_weight;
  p.accuracy_sensitivity = 5.0;
  p.latency_tolerance = 1.1;
  return p;
}

void UserProfile::validate() const {
  constants.validate();
  if (!(accuracy_weight >= 0.0 && accuracy_weight <= 1.0))
    domain_fail("accuracy weight (lambda) must be in [0, 1]");
  if (!(accuracy_sensitivity > 0.0)) domain_fail("accuracy sensitivity (b) must be > 0");
  if (!(latency_tolerance >= 1.0)) domain_fail("latency tolerance (x) must be >= 1");
}

double accuracy_utility(double accuracy, const UserProfile& profile) {
  profile.validate();
  const UtilityConstants& c = profile.constants;
  if (!(accuracy > c.accuracy_domain_min()))
    domain_fail("accuracy " + std::to_string(accuracy) + " at or below utility domain bound " +
                std::to_string(c.accuracy_domain_min()));
  if (!(accuracy <= 1.0)) domain_fail("accuracy " + std::to_string(accuracy) + " above 1");
  const double arg = 2.0 / (1.0 - c.accuracy_scale * (1.0 - accuracy)) - 1.0;
  if (!(arg > 0.0)) domain_fail("accuracy utility log argument is non-positive");
  return 1.0 - (1.0 / profile.accuracy_sensitivity) * (std::log(arg) / std::log(c.log_base));
}

double latency_utility(double latency, const UserProfile& profile) {
  profile.validate();
  if (!(latency >= 1.0)) domain_fail("latency " + std::to_string(latency) + " below 1");
  const UtilityConstants& c = profile.constants;
  const double z = c.latency_offset - c.latency_steepness * (latency - profile.latency_tolerance);
  return 1.0 - 1.0 / (1.0 + std::exp(z));
}

double total_utility(const QoEPoint& point, const UserProfile& profile) {
  const double w = profile.accuracy_weight;
  return w * accuracy_utility(point.accuracy, profile) +
         (1.0 - w) * latency_utility(point.latency, profile);
}

double accuracy_for_utility(double utility, const UserProfile& profile) {
  profile.validate();
  if (!(utility > 0.0 && utility <= 1.0)) domain_fail("accuracy utility must be in (0, 1]");
  const UtilityConstants& c = profile.constants;
  const double pw = std::pow(c.log_base, profile.accuracy_sensitivity * (1.0 - utility));
  const double a = 1.0 - (1.0 - 2.0 / (1.0 + pw)) / c.accuracy_scale;
  if (!(a > c.accuracy_domain_min() && a <= 1.0))
    domain_fail("inverted accuracy falls outside the utility domain");
  return a;
}

double latency_for_utility(double utility, const UserProfile& profile) {
  profile.validate();
  if (!(utility > 0.0 && utility < 1.0)) domain_fail("latency utility must be in (0, 1)");
  const UtilityConstants& c = profile.constants;
  return profile.latency_tolerance +
         (c.latency_offset - std::log(utility / (1.0 - utility))) / c.latency_steepness;
}

}  // namespace carbontier
