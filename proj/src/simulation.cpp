#include "velaid/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace velaid {

ObserverState default_observer_init(const TrajectorySpec& trajectory) {
  ObserverState st;
  st.v_hat = trajectory.v(0.0);
  return st;
}

Scenario reference_scenario() {
  Scenario sc;
  sc.trajectory = reference_trajectory();
  sc.sensors.r_m = Vec3(0.18, 0.0, 0.54);
  sc.sensors.b_omega = Vec3::Constant(5.0 * std::numbers::pi / 180.0);
  sc.init = default_observer_init(sc.trajectory);
  return sc;
}

namespace {

class Runner {
 public:
  Runner(const Scenario& sc, const GainConfig& g, const RunOptions& opt)
      : sc_(sc), g_(g), opt_(opt), truth_{sc.trajectory.r0, sc.trajectory.v(0.0)} {
    g.validate();
    sc.sensors.validate();
    if (!(opt.t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");
    if (opt.record_every < 1) throw std::invalid_argument("run: record_every must be >= 1");
    if (!(opt.lyapunov_mu > 0.0)) throw std::invalid_argument("run: lyapunov mu must be positive");
    steps_ = static_cast<long>(std::llround(opt.t_end / opt.dt));
    if (sc.sensors.noise.any()) noise_.emplace(sc.sensors.seed);
  }

  long steps() const { return steps_; }
  double time(long k) const { return static_cast<double>(k) * opt_.dt; }

  SensorFrame frame(long k) {
    const double t = time(k);
    const Vec3 w = sc_.trajectory.omega(t);
    const Vec3 ra = apparent_accel(sc_.trajectory, t);
    return noise_ ? sample(sc_.sensors, truth_, w, ra, t, *noise_) : sample(sc_.sensors, truth_, w, ra, t);
  }

  void advance_truth(long k) { truth_ = step(truth_, sc_.trajectory, time(k), opt_.dt); }

  ArcSample record(double t, int j, const ObserverState& st, const SensorFrame& f, std::optional<double> phi,
                   bool jump) const {
    ArcSample s;
    s.t = t;
    s.j = j;
    s.truth = truth_;
    s.estimate = st;
    s.error = error_state(truth_, st, sc_.sensors.b_omega, f, g_);
    s.phi = phi;
    s.lyapunov = lyapunov_v(s.error, st, g_, opt_.lyapunov_mu).v;
    s.jump = jump;
    return s;
  }

  bool keep(long k) const { return k % opt_.record_every == 0 || k == steps_; }

 private:
  const Scenario& sc_;
  const GainConfig& g_;
  const RunOptions& opt_;
  RigidBodyState truth_;
  std::optional<SensorNoise> noise_;
  long steps_ = 0;
};

}  // namespace

Arc run_continuous(const Scenario& sc, const GainConfig& g, ObserverLaw law, const RunOptions& opt) {
  Runner run(sc, g, opt);
  Arc arc;
  ObserverState st = sc.init;
  for (long k = 0;; ++k) {
    const SensorFrame f = run.frame(k);
    const auto phi = try_phi(f, st, g, sc.sensors.r_m);
    if (!phi) ++arc.guard_violations;
    if (run.keep(k)) arc.samples.push_back(run.record(run.time(k), 0, st, f, phi, false));
    if (k == run.steps()) break;
    st = observer_step(f, st, g, sc.sensors.r_m, opt.dt, law);
    run.advance_truth(k);
  }
  return arc;
}

Arc run_hybrid(const Scenario& sc, const GainConfig& g, const HybridConfig& cfg, const RunOptions& opt) {
  cfg.validate();
  Runner run(sc, g, opt);
  Arc arc;
  HybridObserverState hst{sc.init, 0, 0.0};
  for (long k = 0;; ++k) {
    const double t = run.time(k);
    hst.t = t;
    const SensorFrame f = run.frame(k);
    int jumps_here = 0;
    for (;;) {
      const auto phi = try_phi(f, hst.base, g, sc.sensors.r_m);
      if (!phi) ++arc.guard_violations;
      const bool jumped_into = jumps_here > 0;
      if (jumped_into || run.keep(k)) {
        arc.samples.push_back(run.record(t, hst.j, hst.base, f, phi, jumped_into));
      }
      if (k == run.steps() && !(phi && *phi >= cfg.delta)) break;
      const HybridStepResult res = hybrid_step(hst, f, g, sc.sensors.r_m, cfg, opt.dt);
      if (!res.jump) {
        hst = res.state;
        break;
      }
      if (++jumps_here > kMaxJumpsWithoutFlow) {
        throw HybridLivelock("hybrid observer livelock: more than " + std::to_string(kMaxJumpsWithoutFlow) +
                             " jumps at t = " + std::to_string(t));
      }
      arc.jumps.push_back(*res.jump);
      hst = res.state;
    }
    if (k == run.steps()) break;
    run.advance_truth(k);
  }
  return arc;
}

namespace {

BatchResult run_job(const BatchJob& job) {
  BatchResult r;
  try {
    const Arc arc = job.hybrid ? run_hybrid(job.scenario, job.gains, *job.hybrid, job.options)
                               : run_continuous(job.scenario, job.gains, job.law, job.options);
    const ArcSample& last = arc.samples.back();
    r.final_attitude_deg = rotation_angle(last.error.r_tilde) * 180.0 / std::numbers::pi;
    r.final_bias_error = last.error.b_tilde.norm();
    r.final_accel_error = last.error.r_a_tilde.norm();
    for (const ArcSample& s : arc.samples) r.max_bias_estimate = std::max(r.max_bias_estimate, s.estimate.b_hat.norm());
    r.jumps = static_cast<int>(arc.jumps.size());
  } catch (const std::exception&) {
    r.failed = true;
  }
  return r;
}

}  // namespace

std::vector<BatchResult> run_batch(std::span<const BatchJob> jobs) {
  std::vector<BatchResult> out(jobs.size());
  const auto n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = run_job(jobs[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<BatchResult> run_batch_serial(std::span<const BatchJob> jobs) {
  std::vector<BatchResult> out;
  out.reserve(jobs.size());
  for (const BatchJob& job : jobs) out.push_back(run_job(job));
  return out;
}

}  // namespace velaid
