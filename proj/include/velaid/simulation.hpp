#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "velaid/hybrid.hpp"

namespace velaid {

/// Raised when more than kMaxJumpsWithoutFlow jumps occur at one instant.
class HybridLivelock : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxJumpsWithoutFlow = 3;

/// Everything needed to generate a closed-loop run.
struct Scenario {
  TrajectorySpec trajectory;
  SensorConfig sensors;
  ObserverState init;
};

/// Observer state initialized at the GPS velocity with identity attitude
/// and zero bias estimate.
ObserverState default_observer_init(const TrajectorySpec& trajectory);

/// The reference study: upside-down start, r_m = [0.18, 0, 0.54],
/// 5 deg/s bias on each gyro axis, observer at R_hat = I.
Scenario reference_scenario();

struct RunOptions {
  double t_end = 60.0;
  double dt = 1e-3;
  double lyapunov_mu = 0.01;
  int record_every = 1;  ///< keep every n-th flow sample; jump rows are always kept
};

/// One point of a hybrid arc.
struct ArcSample {
  double t = 0.0;
  int j = 0;
  RigidBodyState truth;
  ObserverState estimate;
  ErrorState error;
  std::optional<double> phi;
  double lyapunov = 0.0;
  bool jump = false;  ///< this sample is the post-jump point of a jump at t
};

struct Arc {
  std::vector<ArcSample> samples;
  std::vector<JumpEvent> jumps;
  int guard_violations = 0;  ///< samples at which the attitude cost was undefined
};

/// Continuous-time run of `law` (no jumps).
Arc run_continuous(const Scenario& sc, const GainConfig& g, ObserverLaw law, const RunOptions& opt);

/// Hybrid observer run. Throws HybridLivelock when the jump budget at a
/// single instant is exhausted.
Arc run_hybrid(const Scenario& sc, const GainConfig& g, const HybridConfig& cfg, const RunOptions& opt);

/// One independent closed-loop run of a batch (gain sweeps, Monte Carlo
/// initializations). `hybrid` selects run_hybrid; otherwise `law` flows.
struct BatchJob {
  Scenario scenario;
  GainConfig gains;
  ObserverLaw law = ObserverLaw::kProposed;
  std::optional<HybridConfig> hybrid;
  RunOptions options;
};

/// Final-sample digest of a batch run.
struct BatchResult {
  double final_attitude_deg = 0.0;
  double final_bias_error = 0.0;
  double final_accel_error = 0.0;
  double max_bias_estimate = 0.0;  ///< max over samples of |b_hat|
  int jumps = 0;
  bool failed = false;  ///< the run threw (livelock, invalid input)
};

/// Runs jobs concurrently (OpenMP, one job per iteration).
std::vector<BatchResult> run_batch(std::span<const BatchJob> jobs);

/// Sequential reference for run_batch; results are bit-identical.
std::vector<BatchResult> run_batch_serial(std::span<const BatchJob> jobs);

}  // namespace velaid
