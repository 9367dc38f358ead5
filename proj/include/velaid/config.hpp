#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "velaid/certificate.hpp"
#include "velaid/simulation.hpp"

namespace velaid {

/// Malformed or inconsistent configuration text.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode { kContinuous, kHybrid, kHua2010, kRoberts2011 };

std::string_view to_string(RunMode mode);
RunMode parse_run_mode(std::string_view name);  ///< throws ConfigError

/// Fully resolved scenario. Angles are in radians and rates in rad/s;
/// degree-valued keys are converted while parsing.
struct ScenarioConfig {
  SinusoidTrajectoryParams trajectory = reference_trajectory_params();
  SensorConfig sensors;
  GainConfig gains;
  HybridConfig hybrid;
  RunOptions run;
  RunMode mode = RunMode::kContinuous;
  std::filesystem::path output = "telemetry.csv";

  RotationMatrix observer_r0;
  bool observer_v0_from_gps = true;
  Vec3 observer_v0 = Vec3::Zero();
  Vec3 observer_b0 = Vec3::Zero();

  double constants_grid_dt = 1e-3;
  CertificateInputs certificate;
  /// Unset values are taken from the initial truth and observer states.
  std::optional<double> certificate_r_a0_norm;
  std::optional<double> certificate_r_dist0;

  Scenario scenario() const;
  ConstantsOptions constants_options() const;
  /// Certificate inputs with |r~_a(0)| and |R~(0)|_I resolved from the initial states.
  CertificateInputs certificate_inputs() const;
};

/// The reference study (the defaults of ScenarioConfig).
ScenarioConfig reference_config();

/// Parses `key = value` lines; '#' starts a comment. Unknown keys,
/// duplicate keys and malformed values raise ConfigError.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Applies key/value overrides on top of reference_config().
ScenarioConfig parse_config(const std::string& text);

/// Reads and parses a config file; I/O failures raise ConfigError.
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace velaid
