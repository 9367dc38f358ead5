#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "velaid/config.hpp"

namespace velaid {

/// Telemetry header, schema v1. Column order is fixed.
inline constexpr std::string_view kCsvHeaderV1 =
    "t,j,attitude_error_deg,dist_RI,btilde_x,btilde_y,btilde_z,ratilde_norm,phi,V,jump_flag";

struct CsvRow {
  double t = 0.0;
  int j = 0;
  double attitude_error_deg = 0.0;
  double dist_ri = 0.0;
  Vec3 b_tilde = Vec3::Zero();
  double r_a_tilde_norm = 0.0;
  double phi = 0.0;  ///< NaN where the observability guard failed
  double v = 0.0;
  bool jump = false;
};

CsvRow to_csv_row(const ArcSample& s);

/// Writes the header and one row per sample. Numbers use the shortest
/// round-trip representation, so output is byte-stable.
void write_csv(std::ostream& out, const Arc& arc);

/// Parses schema-v1 telemetry. Throws std::runtime_error on a missing or
/// different header, a malformed row, or an empty table.
std::vector<CsvRow> read_csv(std::istream& in);

/// Thresholds for the convergence times of a summary.
struct ConvergenceThresholds {
  double attitude_deg = 1.0;
  double bias = 0.005;   ///< rad/s
  double accel = 0.05;   ///< m/s^2
};

struct RunSummary {
  RunMode mode = RunMode::kContinuous;
  std::size_t samples = 0;
  double t_end = 0.0;
  double final_attitude_deg = 0.0;
  double final_bias_error = 0.0;
  double final_accel_error = 0.0;
  /// Earliest time after which the error stays below its threshold.
  std::optional<double> t_attitude;
  std::optional<double> t_bias;
  std::optional<double> t_accel;
  std::vector<JumpEvent> jumps;
  int guard_violations = 0;
};

RunSummary summarize(const Arc& arc, RunMode mode, const ConvergenceThresholds& th = {});

/// Human-readable multi-line summary.
std::string format_summary(const RunSummary& s);

struct ScenarioResult {
  Arc arc;
  RunSummary summary;
};

/// Runs cfg.mode on cfg.scenario() without touching the filesystem.
ScenarioResult simulate(const ScenarioConfig& cfg);

/// simulate() plus telemetry written to `out`. Throws std::runtime_error
/// when the file cannot be written.
RunSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out);

/// run_scenario to cfg.output.
RunSummary run_scenario(const ScenarioConfig& cfg);

/// Trajectory constants of the configured scenario over [0, t_end].
TrajectoryConstants scenario_constants(const ScenarioConfig& cfg);

/// Gain certificate for the configured gains against scenario_constants().
Certificate scenario_certificate(const ScenarioConfig& cfg);

std::string format_constants(const TrajectoryConstants& tc);
std::string format_certificate(const Certificate& c);

}  // namespace velaid
