#include "carbontier/data_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <utility>

namespace carbontier {

namespace {

// Fixed 6-decimal rendering keeps every report byte-stable.
std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // fold -0 into 0
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<std::string> split_lines(std::string_view content) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) {
      lines.emplace_back(content.substr(start));
      break;
    }
    lines.emplace_back(content.substr(start, end - start));
    start = end + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (std::string& line : lines)
    if (!line.empty() && line.back() == '\r') line.pop_back();
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& token, int line) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw ParseError(line, "'" + token + "' is not a number");
  }
  if (consumed != token.size()) throw ParseError(line, "'" + token + "' is not a number");
  if (!std::isfinite(value)) throw ParseError(line, "'" + token + "' is not finite");
  return value;
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<DailyIntensity> parse_intensity_csv(std::string_view content) {
  const std::vector<std::string> lines = split_lines(content);
  if (lines.empty()) throw ParseError(1, "missing header 'date,carbon_intensity'");
  if (lines[0] != "date,carbon_intensity")
    throw ParseError(1, "header must be exactly 'date,carbon_intensity', got '" + lines[0] + "'");

  std::vector<DailyIntensity> rows;
  std::set<Date> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (lines[i].empty()) throw ParseError(line_no, "empty record");
    const std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != 2)
      throw ParseError(line_no, "expected 2 fields, got " + std::to_string(fields.size()));
    DailyIntensity row;
    try {
      row.date = Date::parse(fields[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    row.intensity = parse_double(fields[1], line_no);
    if (!(row.intensity > 0.0))
      throw ParseError(line_no, "carbon intensity must be positive, got " + fields[1]);
    if (!seen.insert(row.date).second)
      throw ParseError(line_no, "duplicate date " + fields[0]);
    rows.push_back(row);
  }
  return rows;
}

std::string write_intensity_csv(const std::vector<DailyIntensity>& rows) {
  std::string out = "date,carbon_intensity\n";
  for (const DailyIntensity& row : rows)
    out += row.date.to_string() + "," + fmt(row.intensity) + "\n";
  return out;
}

EmissionsTable parse_emissions_csv(std::string_view content) {
  const std::vector<std::string> lines = split_lines(content);
  if (lines.empty()) throw ParseError(1, "missing header 'kind,value,reduction'");
  if (lines[0] != "kind,value,reduction")
    throw ParseError(1, "header must be exactly 'kind,value,reduction', got '" + lines[0] + "'");
  EmissionsTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (lines[i].empty()) throw ParseError(line_no, "empty record");
    const std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != 3)
      throw ParseError(line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    TradeoffRow row;
    row.value = parse_double(fields[1], line_no);
    row.reduction = parse_double(fields[2], line_no);
    if (fields[0] == "accuracy") {
      table.accuracy_rows.push_back(row);
    } else if (fields[0] == "latency") {
      table.latency_rows.push_back(row);
    } else {
      throw ParseError(line_no, "kind must be 'accuracy' or 'latency', got '" + fields[0] + "'");
    }
  }
  table.validate();
  return table;
}

ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw std::invalid_argument("unsupported format '" + std::string(name) +
                              "' (expected csv or json)");
}

namespace {

std::string curve_csv(const CurveTable& table) {
  std::string out = table.axis + ",u_sensitive,u_green\n";
  for (const CurveRow& row : table.rows)
    out += fmt(row.value) + "," + fmt(row.u_sensitive) + "," + fmt(row.u_green) + "\n";
  return out;
}

std::string curve_json_rows(const CurveTable& table) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const CurveRow& row = table.rows[i];
    out += "    {\"value\": " + fmt(row.value) + ", \"u_sensitive\": " + fmt(row.u_sensitive) +
           ", \"u_green\": " + fmt(row.u_green) + "}";
    out += (i + 1 < table.rows.size()) ? ",\n" : "\n";
  }
  out += "  ]";
  return out;
}

const char* kSweepHeader =
    "profile,lambda,b,x,p,accuracy,latency,reduction,reduction_from_accuracy,"
    "reduction_from_latency,utility,charge,net_benefit\n";

std::string sweep_csv_row(const SweepRow& row) {
  const OptimalChoice& c = row.choice;
  return row.profile_name + "," + fmt(row.profile.accuracy_weight) + "," +
         fmt(row.profile.accuracy_sensitivity) + "," + fmt(row.profile.latency_tolerance) + "," +
         fmt(row.price) + "," + fmt(c.accuracy) + "," + fmt(c.latency) + "," + fmt(c.reduction) +
         "," + fmt(c.reduction_from_accuracy) + "," + fmt(c.reduction_from_latency) + "," +
         fmt(c.utility) + "," + fmt(c.charge) + "," + fmt(c.net_benefit) + "\n";
}

std::string sweep_json_object(const SweepRow& row, const std::string& indent) {
  const OptimalChoice& c = row.choice;
  std::string out = indent + "{\n";
  const std::string field = indent + "  ";
  out += field + "\"profile\": \"" + row.profile_name + "\",\n";
  out += field + "\"lambda\": " + fmt(row.profile.accuracy_weight) + ",\n";
  out += field + "\"b\": " + fmt(row.profile.accuracy_sensitivity) + ",\n";
  out += field + "\"x\": " + fmt(row.profile.latency_tolerance) + ",\n";
  out += field + "\"p\": " + fmt(row.price) + ",\n";
  out += field + "\"accuracy\": " + fmt(c.accuracy) + ",\n";
  out += field + "\"latency\": " + fmt(c.latency) + ",\n";
  out += field + "\"reduction\": " + fmt(c.reduction) + ",\n";
  out += field + "\"reduction_from_accuracy\": " + fmt(c.reduction_from_accuracy) + ",\n";
  out += field + "\"reduction_from_latency\": " + fmt(c.reduction_from_latency) + ",\n";
  out += field + "\"utility\": " + fmt(c.utility) + ",\n";
  out += field + "\"charge\": " + fmt(c.charge) + ",\n";
  out += field + "\"net_benefit\": " + fmt(c.net_benefit) + "\n";
  out += indent + "}";
  return out;
}

std::string residual_rows_json(const std::vector<ResidualRow>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += "    {\"value\": " + fmt(rows[i].value) + ", \"reduction\": " + fmt(rows[i].reduction) +
           ", \"fitted\": " + fmt(rows[i].fitted) + ", \"residual\": " + fmt(rows[i].residual) +
           "}";
    out += (i + 1 < rows.size()) ? ",\n" : "\n";
  }
  out += "  ]";
  return out;
}

}  // namespace

FitReport make_fit_report(const EmissionsTable& table) {
  FitReport report;
  report.model = EmissionsModel::fit(table);
  for (const TradeoffRow& row : table.accuracy_rows) {
    const double fitted = report.model.reduction_from_accuracy(row.value);
    report.accuracy_residuals.push_back({row.value, row.reduction, fitted, fitted - row.reduction});
  }
  for (const TradeoffRow& row : table.latency_rows) {
    const double fitted = report.model.reduction_from_latency(row.value);
    report.latency_residuals.push_back({row.value, row.reduction, fitted, fitted - row.reduction});
  }
  return report;
}

std::string write_report(const std::vector<CurveTable>& curves, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      if (i > 0) out += "\n";
      out += curve_csv(curves[i]);
    }
    return out;
  }
  std::string out = "{\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    out += "  \"" + curves[i].axis + "_curve\": " + curve_json_rows(curves[i]);
    out += (i + 1 < curves.size()) ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

std::string write_report(const std::vector<SweepRow>& rows, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = kSweepHeader;
    for (const SweepRow& row : rows) out += sweep_csv_row(row);
    return out;
  }
  std::string out = "{\n  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += sweep_json_object(rows[i], "    ");
    out += (i + 1 < rows.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string write_report(const SweepRow& row, ReportFormat format) {
  if (format == ReportFormat::csv) return kSweepHeader + sweep_csv_row(row);
  return sweep_json_object(row, "") + "\n";
}

std::string write_report(const FitReport& fit, ReportFormat format) {
  const EmissionsModel& m = fit.model;
  if (format == ReportFormat::csv) {
    std::string out = "coefficient,value\n";
    out += "accuracy_slope," + fmt(m.accuracy_slope) + "\n";
    out += "latency_linear," + fmt(m.latency_fit.linear) + "\n";
    out += "latency_quadratic," + fmt(m.latency_fit.quadratic) + "\n";
    out += "peak_latency_reduction," + fmt(m.peak_latency_reduction()) + "\n";
    out += "peak_latency," + fmt(m.peak_latency()) + "\n";
    out += "max_reduction," + fmt(m.max_reduction) + "\n";
    out += "\nkind,value,reduction,fitted,residual\n";
    for (const ResidualRow& row : fit.accuracy_residuals)
      out += "accuracy," + fmt(row.value) + "," + fmt(row.reduction) + "," + fmt(row.fitted) +
             "," + fmt(row.residual) + "\n";
    for (const ResidualRow& row : fit.latency_residuals)
      out += "latency," + fmt(row.value) + "," + fmt(row.reduction) + "," + fmt(row.fitted) + "," +
             fmt(row.residual) + "\n";
    return out;
  }
  std::string out = "{\n";
  out += "  \"accuracy_slope\": " + fmt(m.accuracy_slope) + ",\n";
  out += "  \"latency_linear\": " + fmt(m.latency_fit.linear) + ",\n";
  out += "  \"latency_quadratic\": " + fmt(m.latency_fit.quadratic) + ",\n";
  out += "  \"peak_latency_reduction\": " + fmt(m.peak_latency_reduction()) + ",\n";
  out += "  \"peak_latency\": " + fmt(m.peak_latency()) + ",\n";
  out += "  \"max_reduction\": " + fmt(m.max_reduction) + ",\n";
  out += "  \"accuracy_residuals\": " + residual_rows_json(fit.accuracy_residuals) + ",\n";
  out += "  \"latency_residuals\": " + residual_rows_json(fit.latency_residuals) + "\n";
  out += "}\n";
  return out;
}

namespace {

std::string config_json(const TierConfig& config) {
  const UserProfile& p = config.profile;
  const EmissionsModel& m = config.model;
  std::string out = "  \"config\": {\n";
  out += "    \"threshold\": " + fmt(config.threshold) + ",\n";
  out += "    \"profile\": {\"lambda\": " + fmt(p.accuracy_weight) + ", \"b\": " +
         fmt(p.accuracy_sensitivity) + ", \"x\": " + fmt(p.latency_tolerance) +
         ", \"accuracy_scale\": " + fmt(p.constants.accuracy_scale) + ", \"latency_offset\": " +
         fmt(p.constants.latency_offset) + ", \"latency_steepness\": " +
         fmt(p.constants.latency_steepness) + ", \"log_base\": " + fmt(p.constants.log_base) +
         "},\n";
  out += "    \"model\": {\"accuracy_slope\": " + fmt(m.accuracy_slope) +
         ", \"latency_linear\": " + fmt(m.latency_fit.linear) + ", \"latency_quadratic\": " +
         fmt(m.latency_fit.quadratic) + ", \"max_reduction\": " + fmt(m.max_reduction) +
         ", \"accuracy_domain\": [" + fmt(m.accuracy_min) + ", " + fmt(m.accuracy_max) +
         "], \"latency_domain\": [" + fmt(m.latency_min) + ", " + fmt(m.latency_max) + "]},\n";
  out += "    \"price_step\": " + fmt(config.prices.step) + ",\n";
  out += "    \"max_price\": " + fmt(config.prices.max_price) + ",\n";
  out += "    \"accuracy_step\": " + fmt(config.grid.accuracy_step) + ",\n";
  out += "    \"latency_step\": " + fmt(config.grid.latency_step) + "\n";
  out += "  },\n";
  return out;
}

std::string day_json(const DayPlan& day) {
  const OptimalChoice& c = day.choice;
  std::string out = "    {\"date\": \"" + day.date.to_string() + "\"";
  out += ", \"intensity\": " + fmt(day.intensity);
  out += ", \"required_reduction\": " + fmt(day.required_reduction);
  out += ", \"price\": " + fmt(day.price);
  out += ", \"accuracy\": " + fmt(c.accuracy);
  out += ", \"latency\": " + fmt(c.latency);
  out += ", \"reduction\": " + fmt(c.reduction);
  out += ", \"reduction_from_accuracy\": " + fmt(c.reduction_from_accuracy);
  out += ", \"reduction_from_latency\": " + fmt(c.reduction_from_latency);
  out += ", \"utility\": " + fmt(c.utility);
  out += ", \"charge\": " + fmt(c.charge);
  out += ", \"net_benefit\": " + fmt(c.net_benefit);
  out += std::string(", \"feasible\": ") + (day.feasible ? "true" : "false") + "}";
  return out;
}

}  // namespace

std::string write_report(const TierPlan& plan, const TierConfig& config, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out =
        "date,intensity,required_reduction,price,accuracy,latency,reduction,"
        "reduction_from_accuracy,reduction_from_latency,utility,charge,net_benefit,feasible\n";
    for (const DayPlan& day : plan.days) {
      const OptimalChoice& c = day.choice;
      out += day.date.to_string() + "," + fmt(day.intensity) + "," +
             fmt(day.required_reduction) + "," + fmt(day.price) + "," + fmt(c.accuracy) + "," +
             fmt(c.latency) + "," + fmt(c.reduction) + "," + fmt(c.reduction_from_accuracy) +
             "," + fmt(c.reduction_from_latency) + "," + fmt(c.utility) + "," + fmt(c.charge) +
             "," + fmt(c.net_benefit) + "," + (day.feasible ? "true" : "false") + "\n";
    }
    return out;
  }
  std::string out = "{\n";
  out += config_json(config);
  out += "  \"days\": [\n";
  for (std::size_t i = 0; i < plan.days.size(); ++i) {
    out += day_json(plan.days[i]);
    out += (i + 1 < plan.days.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"low_tier_fraction\": " + fmt(plan.low_tier_fraction) + ",\n";
  out += "  \"promised_accuracy\": " + fmt(plan.promised_accuracy) + ",\n";
  out += "  \"promised_latency\": " + fmt(plan.promised_latency) + ",\n";
  out += "  \"discount\": " + fmt(plan.discount) + ",\n";
  out += "  \"infeasible_days\": " + std::to_string(plan.infeasible_days) + ",\n";
  out += "  \"absolute_saving\": " + fmt(plan.absolute_saving) + "\n";
  out += "}\n";
  return out;
}

}  // namespace carbontier
