// carbontier: carbon-aware QoE incentive modeling and two-tier plan design.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "carbontier/data_io.hpp"

namespace {

using namespace carbontier;

struct ProfileFlags {
  std::string kind = "hq";
  double lambda = 0.5;
  double b = 0.0;
  double x = 0.0;
  double log_base = 10.0;
  bool b_set = false;
  bool x_set = false;
};

void add_profile_flags(CLI::App* cmd, ProfileFlags* flags) {
  cmd->add_option("--profile", flags->kind, "User type: hq, green or custom")
      ->check(CLI::IsMember({"hq", "green", "custom"}))
      ->capture_default_str();
  cmd->add_option("--lambda", flags->lambda, "Accuracy weight in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--b", flags->b, "Accuracy sensitivity (custom profile)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--x", flags->x, "Latency tolerance >= 1 (custom profile)")
      ->check(CLI::Range(1.0, 1e9));
  cmd->add_option("--log-base", flags->log_base, "Accuracy utility log base")
      ->check(CLI::Range(1.0 + 1e-9, 1e9))
      ->capture_default_str();
}

// Throws CLI::ValidationError so profile mistakes surface as usage errors.
std::pair<std::string, UserProfile> resolve_profile(const CLI::App* cmd,
                                                    const ProfileFlags& flags) {
  const bool b_given = cmd->count("--b") > 0;
  const bool x_given = cmd->count("--x") > 0;
  UserProfile profile;
  if (flags.kind == "custom") {
    if (cmd->count("--lambda") == 0 || !b_given || !x_given)
      throw CLI::ValidationError("--profile custom requires --lambda, --b and --x");
    profile.accuracy_weight = flags.lambda;
    profile.accuracy_sensitivity = flags.b;
    profile.latency_tolerance = flags.x;
  } else {
    if (b_given || x_given)
      throw CLI::ValidationError("--b/--x are only valid with --profile custom");
    profile = (flags.kind == "green") ? UserProfile::green(flags.lambda)
                                      : UserProfile::high_quality(flags.lambda);
  }
  profile.constants.log_base = flags.log_base;
  profile.validate();
  return {flags.kind, profile};
}

std::vector<double> sample_axis(double lo, double hi, double step) {
  const long long n = std::llround((hi - lo) / step);
  std::vector<double> pts;
  for (long long i = 0; i < n; ++i) pts.push_back(std::min(lo + static_cast<double>(i) * step, hi));
  pts.push_back(hi);
  return pts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + output_path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carbon-aware inference incentives: utility curves, per-user optimal "
               "QoE under a carbon charge, and two-tier subscription design"};
  app.require_subcommand(1);

  // curves
  auto* curves_cmd = app.add_subcommand(
      "curves", "Sample the accuracy and latency utility curves (sensitive vs green)");
  double curves_a_step = 0.005, curves_d_step = 0.005, curves_log_base = 10.0;
  std::string curves_format = "csv", curves_output;
  curves_cmd->add_option("--a-step", curves_a_step, "Accuracy sampling step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  curves_cmd->add_option("--d-step", curves_d_step, "Latency sampling step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  curves_cmd->add_option("--log-base", curves_log_base, "Accuracy utility log base")
      ->check(CLI::Range(1.0 + 1e-9, 1e9))->capture_default_str();
  curves_cmd->add_option("--format", curves_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  curves_cmd->add_option("--output", curves_output, "Write report to file instead of stdout");

  // optimize
  auto* optimize_cmd = app.add_subcommand(
      "optimize", "Optimal (accuracy, latency) choice for one user and incentive");
  ProfileFlags optimize_profile;
  add_profile_flags(optimize_cmd, &optimize_profile);
  double optimize_p = 0.3, optimize_a_step = 0.0005, optimize_d_step = 0.0005;
  std::string optimize_format = "csv", optimize_output;
  optimize_cmd->add_option("--p", optimize_p, "Incentive (price per unit normalized emissions)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  optimize_cmd->add_option("--a-step", optimize_a_step, "Accuracy grid step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  optimize_cmd->add_option("--d-step", optimize_d_step, "Latency grid step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  optimize_cmd->add_option("--format", optimize_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  optimize_cmd->add_option("--output", optimize_output, "Write report to file instead of stdout");

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Optimal choices across incentives; defaults to the four built-in user types");
  ProfileFlags sweep_profile;
  add_profile_flags(sweep_cmd, &sweep_profile);
  std::vector<double> sweep_p_list = {0.1, 0.3, 0.5};
  double sweep_a_step = 0.0005, sweep_d_step = 0.0005;
  std::string sweep_format = "csv", sweep_output;
  sweep_cmd->add_option("--p-list", sweep_p_list, "Comma-separated incentives")
      ->delimiter(',')->check(CLI::NonNegativeNumber)->capture_default_str();
  sweep_cmd->add_option("--a-step", sweep_a_step, "Accuracy grid step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  sweep_cmd->add_option("--d-step", sweep_d_step, "Latency grid step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  sweep_cmd->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sweep_cmd->add_option("--output", sweep_output, "Write report to file instead of stdout");

  // fit
  auto* fit_cmd = app.add_subcommand(
      "fit", "Emissions-model coefficients and per-row residuals of the trade-off table");
  std::string fit_input, fit_format = "csv", fit_output;
  fit_cmd->add_option("--input", fit_input,
                      "Trade-off table CSV (kind,value,reduction); built-in table if omitted");
  fit_cmd->add_option("--format", fit_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  fit_cmd->add_option("--output", fit_output, "Write report to file instead of stdout");

  // tier
  auto* tier_cmd = app.add_subcommand(
      "tier", "Design a two-tier plan from a daily carbon-intensity CSV");
  ProfileFlags tier_profile;
  add_profile_flags(tier_cmd, &tier_profile);
  std::string tier_input;
  double tier_threshold = 220.0, tier_a_step = 0.0005, tier_d_step = 0.0005, tier_p_step = 0.005;
  std::string tier_format = "json", tier_output;
  tier_cmd->add_option("--input", tier_input, "Daily intensity CSV (date,carbon_intensity)")
      ->required();
  tier_cmd->add_option("--threshold", tier_threshold, "Carbon intensity cap, gCO2eq/kWh")
      ->check(CLI::PositiveNumber)->capture_default_str();
  tier_cmd->add_option("--a-step", tier_a_step, "Accuracy grid step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  tier_cmd->add_option("--d-step", tier_d_step, "Latency grid step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  tier_cmd->add_option("--p-step", tier_p_step, "Price scan step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  tier_cmd->add_option("--format", tier_format, "json (full plan) or csv (per-day)")
      ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  tier_cmd->add_option("--output", tier_output, "Write report to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (curves_cmd->parsed()) {
      UserProfile sensitive = UserProfile::high_quality();
      UserProfile green = UserProfile::green();
      sensitive.constants.log_base = curves_log_base;
      green.constants.log_base = curves_log_base;
      const EmissionsModel model = EmissionsModel::fit();

      CurveTable accuracy_curve{"accuracy", {}};
      for (double a : sample_axis(model.accuracy_min, model.accuracy_max, curves_a_step))
        accuracy_curve.rows.push_back(
            {a, accuracy_utility(a, sensitive), accuracy_utility(a, green)});
      CurveTable latency_curve{"latency", {}};
      for (double d : sample_axis(model.latency_min, model.latency_max, curves_d_step))
        latency_curve.rows.push_back(
            {d, latency_utility(d, sensitive), latency_utility(d, green)});
      emit(write_report({accuracy_curve, latency_curve}, parse_format(curves_format)),
           curves_output);
    } else if (optimize_cmd->parsed()) {
      auto [name, profile] = resolve_profile(optimize_cmd, optimize_profile);
      SweepRow row;
      row.profile_name = name;
      row.profile = profile;
      row.price = optimize_p;
      row.choice = optimize_choice(profile, EmissionsModel::fit(), optimize_p,
                                   {optimize_a_step, optimize_d_step});
      emit(write_report(row, parse_format(optimize_format)), optimize_output);
    } else if (sweep_cmd->parsed()) {
      std::vector<NamedProfile> profiles;
      if (sweep_cmd->count("--profile") || sweep_cmd->count("--lambda") ||
          sweep_cmd->count("--b") || sweep_cmd->count("--x")) {
        auto [name, profile] = resolve_profile(sweep_cmd, sweep_profile);
        profiles.push_back({name, profile});
      } else {
        profiles = preset_profiles();
        for (NamedProfile& np : profiles) np.profile.constants.log_base = sweep_profile.log_base;
      }
      const std::vector<SweepRow> rows = sweep_incentives(
          profiles, sweep_p_list, EmissionsModel::fit(), {sweep_a_step, sweep_d_step});
      emit(write_report(rows, parse_format(sweep_format)), sweep_output);
    } else if (fit_cmd->parsed()) {
      const EmissionsTable table = fit_input.empty()
                                       ? EmissionsTable::defaults()
                                       : parse_emissions_csv(read_file(fit_input));
      emit(write_report(make_fit_report(table), parse_format(fit_format)), fit_output);
    } else if (tier_cmd->parsed()) {
      auto [name, profile] = resolve_profile(tier_cmd, tier_profile);
      (void)name;
      TierConfig config;
      config.threshold = tier_threshold;
      config.profile = profile;
      config.model = EmissionsModel::fit();
      config.prices.step = tier_p_step;
      config.grid = {tier_a_step, tier_d_step};
      const std::vector<DailyIntensity> series = parse_intensity_csv(read_file(tier_input));
      const TierPlan plan = design_tier(series, config);
      emit(write_report(plan, config, parse_format(tier_format)), tier_output);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
