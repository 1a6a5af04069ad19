#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "carbontier/emissions.hpp"
#include "carbontier/net_benefit.hpp"
#include "carbontier/tier_plan.hpp"

namespace carbontier {

/// Input error with the 1-based line it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Parses a `date,carbon_intensity` CSV (ISO dates, positive decimals).
// Duplicate dates and non-positive intensities are errors; an empty body
// yields an empty list.
std::vector<DailyIntensity> parse_intensity_csv(std::string_view content);

std::string write_intensity_csv(const std::vector<DailyIntensity>& rows);

// Parses a `kind,value,reduction` CSV with kind in {accuracy, latency}
// into a validated EmissionsTable.
EmissionsTable parse_emissions_csv(std::string_view content);

enum class ReportFormat { csv, json };

// "csv" or "json"; anything else is an unsupported-format error.
ReportFormat parse_format(std::string_view name);

/// Sampled utility curves along one axis ("accuracy" or "latency"),
/// comparing the sensitive and green presets.
struct CurveRow {
  double value = 0.0;
  double u_sensitive = 0.0;
  double u_green = 0.0;
};

struct CurveTable {
  std::string axis;
  std::vector<CurveRow> rows;
};

/// Fit coefficients next to the per-row residuals of the table they were
/// fitted from.
struct ResidualRow {
  double value = 0.0;
  double reduction = 0.0;
  double fitted = 0.0;
  double residual = 0.0;
};

struct FitReport {
  EmissionsModel model{};
  std::vector<ResidualRow> accuracy_residuals;
  std::vector<ResidualRow> latency_residuals;
};

FitReport make_fit_report(const EmissionsTable& table);

// All writers are deterministic: fixed column/key order, fixed 6-decimal
// rendering, byte-identical output for identical inputs.
std::string write_report(const std::vector<CurveTable>& curves, ReportFormat format);
std::string write_report(const std::vector<SweepRow>& rows, ReportFormat format);
std::string write_report(const SweepRow& row, ReportFormat format);
std::string write_report(const FitReport& fit, ReportFormat format);
std::string write_report(const TierPlan& plan, const TierConfig& config, ReportFormat format);

}  // namespace carbontier
