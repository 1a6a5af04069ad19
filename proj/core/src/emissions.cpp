#include "carbontier/emissions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace carbontier {

namespace {

constexpr double kAnchorTol = 1e-12;

void check_anchor(const std::vector<TradeoffRow>& rows, const char* kind) {
  if (rows.empty()) throw std::invalid_argument(std::string(kind) + " rows are empty");
  if (std::abs(rows.front().value - 1.0) > kAnchorTol ||
      std::abs(rows.front().reduction) > kAnchorTol)
    throw std::invalid_argument(std::string(kind) +
                                " rows must start with the (1.0, 0.0) anchor");
}

}  // namespace

EmissionsTable EmissionsTable::defaults() {
  EmissionsTable t;
  t.accuracy_rows = {{1.00, 0.00}, {0.97, 0.20}, {0.93, 0.40}, {0.90, 0.60}, {0.88, 0.80}};
  t.latency_rows = {{1.00, 0.00}, {1.12, 0.19}, {1.28, 0.26}};
  return t;
}

void EmissionsTable::validate() const {
  check_anchor(accuracy_rows, "accuracy");
  check_anchor(latency_rows, "latency");
  for (std::size_t i = 1; i < accuracy_rows.size(); ++i) {
    if (!(accuracy_rows[i].value < accuracy_rows[i - 1].value))
      throw std::invalid_argument("accuracy rows must be strictly decreasing in accuracy");
    if (!(accuracy_rows[i].reduction > accuracy_rows[i - 1].reduction))
      throw std::invalid_argument("accuracy rows must be strictly increasing in reduction");
  }
  for (std::size_t i = 1; i < latency_rows.size(); ++i) {
    if (!(latency_rows[i].value > latency_rows[i - 1].value))
      throw std::invalid_argument("latency rows must be strictly increasing in latency");
    if (!(latency_rows[i].reduction > latency_rows[i - 1].reduction))
      throw std::invalid_argument("latency rows must be strictly increasing in reduction");
  }
}

double fit_accuracy(const EmissionsTable& table) {
  table.validate();
  double num = 0.0;
  double den = 0.0;
  for (const TradeoffRow& row : table.accuracy_rows) {
    const double drop = 1.0 - row.value;
    num += drop * row.reduction;
    den += drop * drop;
  }
  if (den <= 0.0)
    throw std::invalid_argument("degenerate accuracy table: all accuracy drops are zero");
  return num / den;
}

LatencyFit fit_latency(const EmissionsTable& table) {
  table.validate();
  const std::vector<TradeoffRow>& rows = table.latency_rows;
  if (rows.size() < 3)
    throw std::invalid_argument("latency fit needs at least two rows beyond the anchor");

  if (rows.size() == 3) {
    // Unique quadratic through the anchor and the two samples.
    const double t1 = rows[1].value - 1.0, r1 = rows[1].reduction;
    const double t2 = rows[2].value - 1.0, r2 = rows[2].reduction;
    const double det = t1 * t1 * t2 - t2 * t2 * t1;
    if (std::abs(det) < 1e-15)
      throw std::invalid_argument("degenerate latency table: duplicate abscissae");
    LatencyFit fit;
    fit.quadratic = (r1 * t2 - r2 * t1) / det;
    fit.linear = (t1 * t1 * r2 - t2 * t2 * r1) / det;
    return fit;
  }

  // Least-squares quadratic through the origin point.
  double s2 = 0.0, s3 = 0.0, s4 = 0.0, s1r = 0.0, s2r = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = rows[i].value - 1.0;
    const double r = rows[i].reduction;
    s2 += t * t;
    s3 += t * t * t;
    s4 += t * t * t * t;
    s1r += t * r;
    s2r += t * t * r;
  }
  const double det = s4 * s2 - s3 * s3;
  if (std::abs(det) < 1e-15 * s4 * s2)
    throw std::invalid_argument("degenerate latency table: duplicate abscissae");
  LatencyFit fit;
  fit.quadratic = (s2r * s2 - s1r * s3) / det;
  fit.linear = (s4 * s1r - s3 * s2r) / det;
  return fit;
}

EmissionsModel EmissionsModel::fit(const EmissionsTable& table) {
  EmissionsModel m;
  m.accuracy_slope = fit_accuracy(table);
  m.latency_fit = fit_latency(table);
  m.accuracy_min = table.accuracy_rows.back().value;
  m.accuracy_max = table.accuracy_rows.front().value;
  m.latency_min = table.latency_rows.front().value;
  m.latency_max = table.latency_rows.back().value;
  m.max_reduction = 0.80;
  m.validate();
  return m;
}

void EmissionsModel::validate() const {
  if (!(max_reduction > 0.0 && max_reduction <= 1.0))
    throw std::invalid_argument("max_reduction must be in (0, 1]");
  if (!(accuracy_min < accuracy_max))
    throw std::invalid_argument("empty accuracy domain");
  if (!(latency_min < latency_max))
    throw std::invalid_argument("empty latency domain");
}

double EmissionsModel::reduction_from_accuracy(double accuracy) const {
  if (!(accuracy >= accuracy_min && accuracy <= accuracy_max))
    throw std::domain_error("accuracy " + std::to_string(accuracy) +
                            " outside emissions domain [" + std::to_string(accuracy_min) +
                            ", " + std::to_string(accuracy_max) + "]");
  return std::clamp(accuracy_slope * (1.0 - accuracy), 0.0, max_reduction);
}

double EmissionsModel::reduction_from_latency(double latency) const {
  if (!(latency >= latency_min && latency <= latency_max))
    throw std::domain_error("latency " + std::to_string(latency) +
                            " outside emissions domain [" + std::to_string(latency_min) +
                            ", " + std::to_string(latency_max) + "]");
  const double t = latency - 1.0;
  return std::max(latency_fit.quadratic * t * t + latency_fit.linear * t, 0.0);
}

double EmissionsModel::peak_latency_reduction() const {
  const double c1 = latency_fit.linear, c2 = latency_fit.quadratic;
  if (!(c2 < 0.0)) {
    // Non-concave fit: the maximum on the domain is at its right edge.
    const double t = latency_max - 1.0;
    return c2 * t * t + c1 * t;
  }
  return c1 * c1 / (-4.0 * c2);
}

double EmissionsModel::peak_latency() const {
  const double c1 = latency_fit.linear, c2 = latency_fit.quadratic;
  if (!(c2 < 0.0)) return latency_max;
  return 1.0 + c1 / (-2.0 * c2);
}

double EmissionsModel::latency_for_reduction(double reduction) const {
  if (!(reduction >= 0.0)) throw std::domain_error("reduction must be >= 0");
  const double peak = peak_latency_reduction();
  if (reduction > peak)
    throw std::domain_error("reduction " + std::to_string(reduction) +
                            " exceeds the latency fit peak " + std::to_string(peak));
  const double c1 = latency_fit.linear, c2 = latency_fit.quadratic;
  if (reduction == 0.0) return 1.0;
  // Lower root of c2 t^2 + c1 t = reduction, in the cancellation-free form.
  const double disc = c1 * c1 + 4.0 * c2 * reduction;
  return 1.0 + 2.0 * reduction / (c1 + std::sqrt(std::max(disc, 0.0)));
}

ReductionSplit EmissionsModel::total_reduction(const QoEPoint& point) const {
  ReductionSplit split;
  split.from_accuracy = reduction_from_accuracy(point.accuracy);
  split.from_latency = reduction_from_latency(point.latency);
  split.total = std::min(split.from_accuracy + split.from_latency, max_reduction);
  return split;
}

}  // namespace carbontier
