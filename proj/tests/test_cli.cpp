// Drives the velaid executable through std::system and checks exit codes
// and the files it writes.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path kTmp = VELAID_TMP;

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  fs::create_directories(kTmp);
  const fs::path log = kTmp / "stdout.txt";
  const std::string cmd = std::string("\"") + VELAID_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream s;
  s << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, s.str()};
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(kTmp);
  const fs::path p = kTmp / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

// Level flight with the field along gravity: no attitude information.
const char* kCollinear =
    "trajectory.v_amp = 0, 0, 0\n"
    "trajectory.w_amp = 0, 0, 0\n"
    "sensor.r_m = 0, 0, 1\n"
    "sim.t_end = 1\n";

}  // namespace

TEST_CASE("usage errors exit with 1, help with 0") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("simulate").code == 1);
  CHECK(run("simulate --config x --mode kalman").code == 1);
  const Result help = run("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("config and I/O failures exit with 1") {
  CHECK(run("simulate --config " + q(kTmp / "does_not_exist.cfg")).code == 1);
  const fs::path bad = write_config("bad.cfg", "gains.k_R = fast\n");
  const Result r = run("simulate --config " + q(bad));
  CHECK(r.code == 1);
  CHECK(r.out.find("gains.k_R") != std::string::npos);
  const fs::path ok = write_config("tiny.cfg", "sim.t_end = 0.01\n");
  CHECK(run("simulate --config " + q(ok) + " --out " + q(kTmp / "no_dir" / "x.csv")).code == 1);
  CHECK(run("plot --csv " + q(kTmp / "missing.csv") + " --out-dir " + q(kTmp / "plots_missing")).code == 1);
}

TEST_CASE("simulate writes v1 telemetry deterministically") {
  const fs::path cfg = write_config("short.cfg", "sim.t_end = 0.5\nsensor.noise_gyro = 0.01\nsensor.seed = 7\n");
  const fs::path a = kTmp / "a.csv";
  const fs::path b = kTmp / "b.csv";
  const Result ra = run("simulate --config " + q(cfg) + " --out " + q(a));
  REQUIRE(ra.code == 0);
  CHECK(ra.out.find("mode: continuous") != std::string::npos);
  REQUIRE(run("simulate --config " + q(cfg) + " --out " + q(b)).code == 0);
  const std::string csv = slurp(a);
  CHECK(csv.rfind("t,j,attitude_error_deg,dist_RI,btilde_x,btilde_y,btilde_z,ratilde_norm,phi,V,jump_flag\n", 0) == 0);
  CHECK(csv == slurp(b));
}

TEST_CASE("mode flag overrides the configured observer") {
  const fs::path cfg = write_config("mode.cfg", "sim.t_end = 0.2\n");
  const fs::path out = kTmp / "hybrid.csv";
  const Result r = run("simulate --config " + q(cfg) + " --mode hybrid --out " + q(out));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("mode: hybrid") != std::string::npos);
  CHECK(r.out.find("jumps: 1") != std::string::npos);
  CHECK(slurp(out).find(",1\n") != std::string::npos);
  for (const char* mode : {"hua2010", "roberts2011", "continuous"}) {
    CHECK(run("simulate --config " + q(cfg) + " --mode " + mode + " --out " + q(kTmp / "m.csv")).code == 0);
  }
}

TEST_CASE("observability loss exits with 2") {
  const fs::path cfg = write_config("collinear.cfg", kCollinear);
  const Result sim = run("simulate --config " + q(cfg) + " --out " + q(kTmp / "collinear.csv"));
  CHECK(sim.code == 2);
  CHECK(sim.out.find("guard") != std::string::npos);
  CHECK(run("constants --config " + q(cfg)).code == 2);
  CHECK(run("certify --config " + q(cfg)).code == 2);
}

TEST_CASE("constants and certify on the reference scenario") {
  const fs::path cfg = write_config("ref.cfg", "constants.grid_dt = 0.01\n");
  const Result c = run("constants --config " + q(cfg));
  CHECK(c.code == 0);
  CHECK(c.out.find("lambda_min_Abar") != std::string::npos);
  const Result cert = run("certify --config " + q(cfg));
  CHECK(cert.code == 0);
  CHECK(cert.out.find("k_R_min") != std::string::npos);
  CHECK(cert.out.find("not satisfied") != std::string::npos);
}

TEST_CASE("plot renders the three charts from telemetry") {
  const fs::path cfg = write_config("plot.cfg", "sim.t_end = 0.3\nsim.mode = hybrid\n");
  const fs::path csv = kTmp / "plot.csv";
  REQUIRE(run("simulate --config " + q(cfg) + " --out " + q(csv)).code == 0);
  const fs::path dir = kTmp / "plots";
  fs::remove_all(dir);
  REQUIRE(run("plot --csv " + q(csv) + " --out-dir " + q(dir)).code == 0);
  for (const char* name : {"attitude_error.svg", "bias_error.svg", "accel_error.svg"}) {
    CHECK(slurp(dir / name).find("jump-marker") != std::string::npos);
  }
  const fs::path junk = write_config("junk.csv", "not,a,telemetry,file\n");
  CHECK(run("plot --csv " + q(junk) + " --out-dir " + q(dir)).code == 1);
}
