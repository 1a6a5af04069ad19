#include "carbontier/net_benefit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace carbontier {

namespace {

// Inclusive [lo, hi] grid; the last point is pinned to hi so rounding can
// never step outside the domain.
std::vector<double> make_grid(double lo, double hi, double step) {
  const long long n = std::llround((hi - lo) / step);
  if (n < 1) throw std::invalid_argument("grid step larger than the domain span");
  std::vector<double> pts(static_cast<std::size_t>(n) + 1);
  for (long long i = 0; i <= n; ++i)
    pts[static_cast<std::size_t>(i)] = std::min(lo + static_cast<double>(i) * step, hi);
  pts.back() = hi;
  return pts;
}

void check_domains(const UserProfile& profile, const EmissionsModel& model) {
  if (!(model.accuracy_min > profile.constants.accuracy_domain_min()))
    throw std::invalid_argument(
        "emissions accuracy domain extends below the utility domain bound");
}

}  // namespace

void SearchGrid::validate() const {
  if (!(accuracy_step > 0.0) || !(latency_step > 0.0))
    throw std::invalid_argument("search grid steps must be > 0");
}

void PriceGrid::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("price grid step must be > 0");
  if (!(max_price >= step)) throw std::invalid_argument("price grid must contain a nonzero price");
}

double charge(double reduction, double price) {
  if (!(reduction >= 0.0 && reduction <= 1.0))
    throw std::domain_error("reduction " + std::to_string(reduction) + " outside [0, 1]");
  if (!(price >= 0.0)) throw std::domain_error("price must be >= 0");
  return price * (1.0 - reduction);
}

OptimalChoice net_benefit_at(const QoEPoint& point, const UserProfile& profile,
                             const EmissionsModel& model, double price) {
  const ReductionSplit split = model.total_reduction(point);
  OptimalChoice c;
  c.accuracy = point.accuracy;
  c.latency = point.latency;
  c.reduction = split.total;
  c.reduction_from_accuracy = split.from_accuracy;
  c.reduction_from_latency = split.from_latency;
  c.utility = total_utility(point, profile);
  c.charge = charge(split.total, price);
  c.net_benefit = c.utility - c.charge;
  return c;
}

OptimalChoice optimize_choice(const UserProfile& profile, const EmissionsModel& model,
                              double price, const SearchGrid& grid) {
  profile.validate();
  model.validate();
  grid.validate();
  check_domains(profile, model);
  if (!(price >= 0.0)) throw std::invalid_argument("price must be >= 0");

  const std::vector<double> acc = make_grid(model.accuracy_min, model.accuracy_max,
                                            grid.accuracy_step);
  const std::vector<double> lat = make_grid(model.latency_min, model.latency_max,
                                            grid.latency_step);

  const double w = profile.accuracy_weight;
  std::vector<double> wa(acc.size()), ra(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    wa[i] = w * accuracy_utility(acc[i], profile);
    ra[i] = model.reduction_from_accuracy(acc[i]);
  }
  std::vector<double> wd(lat.size()), rd(lat.size());
  for (std::size_t j = 0; j < lat.size(); ++j) {
    wd[j] = (1.0 - w) * latency_utility(lat[j], profile);
    rd[j] = model.reduction_from_latency(lat[j]);
  }

  // Exhaustive argmax; ties broken toward larger reduction, then larger
  // accuracy, then smaller latency, independent of iteration order.
  bool have_best = false;
  double best_nb = 0.0, best_r = 0.0, best_a = 0.0, best_d = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    for (std::size_t j = 0; j < lat.size(); ++j) {
      const double r = std::min(ra[i] + rd[j], model.max_reduction);
      const double nb = wa[i] + wd[j] - price * (1.0 - r);
      bool better;
      if (!have_best) {
        better = true;
      } else if (nb != best_nb) {
        better = nb > best_nb;
      } else if (r != best_r) {
        better = r > best_r;
      } else if (acc[i] != best_a) {
        better = acc[i] > best_a;
      } else {
        better = lat[j] < best_d;
      }
      if (better) {
        have_best = true;
        best_nb = nb;
        best_r = r;
        best_a = acc[i];
        best_d = lat[j];
      }
    }
  }
  return net_benefit_at({best_a, best_d}, profile, model, price);
}

std::optional<double> min_incentive_for_reduction(const UserProfile& profile,
                                                  const EmissionsModel& model,
                                                  double target_reduction,
                                                  const PriceGrid& prices,
                                                  const SearchGrid& grid) {
  prices.validate();
  if (!(target_reduction >= 0.0 && target_reduction <= model.max_reduction))
    throw std::invalid_argument("target reduction " + std::to_string(target_reduction) +
                                " outside [0, " + std::to_string(model.max_reduction) + "]");
  const long long n = std::llround(prices.max_price / prices.step);
  for (long long i = 0; i <= n; ++i) {
    const double p = (i == n) ? prices.max_price
                              : std::min(static_cast<double>(i) * prices.step, prices.max_price);
    if (optimize_choice(profile, model, p, grid).reduction >= target_reduction) return p;
  }
  return std::nullopt;
}

std::vector<NamedProfile> preset_profiles() {
  return {{"hq", UserProfile::high_quality(0.5)},
          {"hq", UserProfile::high_quality(0.9)},
          {"green", UserProfile::green(0.5)},
          {"green", UserProfile::green(0.9)}};
}

std::vector<SweepRow> sweep_incentives(const std::vector<NamedProfile>& profiles,
                                       const std::vector<double>& prices,
                                       const EmissionsModel& model,
                                       const SearchGrid& grid) {
  if (profiles.empty()) throw std::invalid_argument("sweep needs at least one profile");
  if (prices.empty()) throw std::invalid_argument("sweep needs at least one price");
  std::vector<SweepRow> rows;
  rows.reserve(profiles.size() * prices.size());
  for (const NamedProfile& np : profiles) {
    for (double p : prices) {
      SweepRow row;
      row.profile_name = np.name;
      row.profile = np.profile;
      row.price = p;
      row.choice = optimize_choice(np.profile, model, p, grid);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace carbontier
