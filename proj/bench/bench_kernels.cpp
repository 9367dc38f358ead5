// Serial vs OpenMP timings for the two parallel kernels: the constants grid
// sweep and the batch runner.
//
//   bench_kernels [grid_dt] [batch_size]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "velaid/config.hpp"

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const double grid_dt = argc > 1 ? std::atof(argv[1]) : 1e-4;
  const int batch = argc > 2 ? std::atoi(argv[2]) : 8;
  std::printf("threads: %d\n", omp_get_max_threads());

  const velaid::ScenarioConfig cfg = velaid::reference_config();
  const velaid::Scenario sc = cfg.scenario();
  velaid::ConstantsOptions opt = cfg.constants_options();
  opt.grid_dt = grid_dt;

  velaid::TrajectoryConstants a, b;
  const double ts = seconds([&] { a = velaid::extract_constants_serial(sc.trajectory, sc.sensors.r_m, 0.3, opt); });
  const double tp = seconds([&] { b = velaid::extract_constants(sc.trajectory, sc.sensors.r_m, 0.3, opt); });
  std::printf("extract_constants  grid_dt=%g  serial %.3f s  omp %.3f s  speedup %.2f  match %s\n", grid_dt, ts, tp,
              ts / tp, (a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2 && a.c3 == b.c3) ? "yes" : "NO");

  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  std::vector<velaid::BatchJob> jobs;
  for (int i = 0; i < batch; ++i) {
    velaid::BatchJob job;
    job.scenario = sc;
    const velaid::Vec3 axis = velaid::Vec3(n01(rng), n01(rng), n01(rng)).normalized();
    job.scenario.init.r_hat = velaid::angle_axis(3.0 * std::uniform_real_distribution<double>()(rng), axis);
    job.options.t_end = 10.0;
    job.options.record_every = 100;
    jobs.push_back(job);
  }
  std::vector<velaid::BatchResult> rs, rp;
  const double bs = seconds([&] { rs = velaid::run_batch_serial(jobs); });
  const double bp = seconds([&] { rp = velaid::run_batch(jobs); });
  bool same = rs.size() == rp.size();
  for (std::size_t i = 0; same && i < rs.size(); ++i) same = rs[i].final_attitude_deg == rp[i].final_attitude_deg;
  std::printf("run_batch          jobs=%d  serial %.3f s  omp %.3f s  speedup %.2f  match %s\n", batch, bs, bp,
              bs / bp, same ? "yes" : "NO");
  return same ? 0 : 1;
}
