#include "velaid/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace velaid {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& key, std::string_view s) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("config key '" + key + "': '" + std::string(s) + "' is not a number");
  }
  return value;
}

// Accepts plain numbers and multiples of pi: "pi", "-pi/3", "2*pi", "0.5*pi/2".
double parse_real(const std::string& key, const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) throw ConfigError("config key '" + key + "': empty value");
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_number(key, s);

  double scale = 1.0;
  std::string head = trim(std::string_view(s).substr(0, at));
  if (head == "-") {
    scale = -1.0;
  } else if (!head.empty() && head != "+") {
    if (head.back() != '*') throw ConfigError("config key '" + key + "': malformed pi expression '" + s + "'");
    head.pop_back();
    scale = parse_number(key, trim(head));
  }
  const std::string tail = trim(std::string_view(s).substr(at + 2));
  double div = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError("config key '" + key + "': malformed pi expression '" + s + "'");
    div = parse_number(key, trim(std::string_view(tail).substr(1)));
    if (div == 0.0) throw ConfigError("config key '" + key + "': division by zero");
  }
  return scale * std::numbers::pi / div;
}

Vec3 parse_vec3(const std::string& key, const std::string& raw) {
  Vec3 out;
  std::stringstream ss(raw);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 3) throw ConfigError("config key '" + key + "': expected 3 comma-separated values");
    out[i++] = parse_real(key, item);
  }
  if (i != 3) throw ConfigError("config key '" + key + "': expected 3 comma-separated values");
  return out;
}

RotationMatrix parse_axis_angle(const std::string& key, const Vec3& axis, double angle_deg) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw ConfigError("config key '" + key + "': rotation axis must be nonzero");
  return angle_axis(angle_deg * kDeg, axis / n);
}

}  // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::kContinuous:
      return "continuous";
    case RunMode::kHybrid:
      return "hybrid";
    case RunMode::kHua2010:
      return "hua2010";
    case RunMode::kRoberts2011:
      return "roberts2011";
  }
  return "unknown";
}

RunMode parse_run_mode(std::string_view name) {
  if (name == "continuous") return RunMode::kContinuous;
  if (name == "hybrid") return RunMode::kHybrid;
  if (name == "hua2010") return RunMode::kHua2010;
  if (name == "roberts2011") return RunMode::kRoberts2011;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected continuous|hybrid|hua2010|roberts2011)");
}

ScenarioConfig reference_config() {
  ScenarioConfig cfg;
  cfg.sensors.b_omega = Vec3::Constant(5.0 * kDeg);
  return cfg;
}

Scenario ScenarioConfig::scenario() const {
  Scenario sc;
  sc.trajectory = make_sinusoid_trajectory(trajectory);
  sc.sensors = sensors;
  sc.init.r_hat = observer_r0;
  sc.init.v_hat = observer_v0_from_gps ? sc.trajectory.v(0.0) : observer_v0;
  sc.init.b_hat = observer_b0;
  return sc;
}

ConstantsOptions ScenarioConfig::constants_options() const {
  ConstantsOptions opt;
  opt.grid_dt = constants_grid_dt;
  opt.t_end = run.t_end;
  opt.rho1 = gains.rho1;
  opt.rho2 = gains.rho2;
  opt.eps_proj = gains.eps_proj;
  return opt;
}

CertificateInputs ScenarioConfig::certificate_inputs() const {
  CertificateInputs in = certificate;
  const Scenario sc = scenario();
  const RigidBodyState truth0{sc.trajectory.r0, sc.trajectory.v(0.0)};
  const SensorFrame f0 = sample(sc.sensors, truth0, sc.trajectory.omega(0.0), apparent_accel(sc.trajectory, 0.0), 0.0);
  const ErrorState e0 = error_state(truth0, sc.init, sc.sensors.b_omega, f0, gains);
  in.r_a0_norm = certificate_r_a0_norm.value_or(e0.r_a_tilde.norm());
  in.r_dist0 = certificate_r_dist0.value_or(so3_distance(e0.r_tilde));
  return in;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg = reference_config();
  const auto kv = parse_key_values(text);

  Vec3 truth_axis = Vec3::UnitY();
  double truth_angle_deg = 180.0;
  Vec3 obs_axis = Vec3::UnitZ();
  double obs_angle_deg = 0.0;
  bool truth_rot = false;
  bool obs_rot = false;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto real = [](double& dst) -> Setter { return [&dst](const auto& k, const auto& v) { dst = parse_real(k, v); }; };
  auto vec = [](Vec3& dst) -> Setter { return [&dst](const auto& k, const auto& v) { dst = parse_vec3(k, v); }; };

  const std::map<std::string, Setter> setters{
      {"trajectory.v_offset", vec(cfg.trajectory.v_offset)},
      {"trajectory.v_amp", vec(cfg.trajectory.v_amp)},
      {"trajectory.v_freq", vec(cfg.trajectory.v_freq)},
      {"trajectory.v_phase", vec(cfg.trajectory.v_phase)},
      {"trajectory.w_amp", vec(cfg.trajectory.w_amp)},
      {"trajectory.w_freq", vec(cfg.trajectory.w_freq)},
      {"trajectory.w_phase", vec(cfg.trajectory.w_phase)},
      {"truth.r0_axis", [&](const auto& k, const auto& v) { truth_axis = parse_vec3(k, v); truth_rot = true; }},
      {"truth.r0_angle_deg", [&](const auto& k, const auto& v) { truth_angle_deg = parse_real(k, v); truth_rot = true; }},
      {"sensor.r_m", vec(cfg.sensors.r_m)},
      {"sensor.gyro_bias_deg_s", [&](const auto& k, const auto& v) { cfg.sensors.b_omega = parse_vec3(k, v) * kDeg; }},
      {"sensor.noise_gyro", real(cfg.sensors.noise.gyro)},
      {"sensor.noise_accel", real(cfg.sensors.noise.accel)},
      {"sensor.noise_mag", real(cfg.sensors.noise.mag)},
      {"sensor.noise_gps", real(cfg.sensors.noise.gps)},
      {"sensor.seed",
       [&](const auto& k, const auto& v) {
         const double s = parse_number(k, v);
         if (s < 0 || s != std::floor(s)) throw ConfigError("config key 'sensor.seed': expected a nonnegative integer");
         cfg.sensors.seed = static_cast<std::uint64_t>(s);
       }},
      {"observer.r0_axis", [&](const auto& k, const auto& v) { obs_axis = parse_vec3(k, v); obs_rot = true; }},
      {"observer.r0_angle_deg", [&](const auto& k, const auto& v) { obs_angle_deg = parse_real(k, v); obs_rot = true; }},
      {"observer.v0",
       [&](const auto& k, const auto& v) {
         if (v == "gps") {
           cfg.observer_v0_from_gps = true;
         } else {
           cfg.observer_v0_from_gps = false;
           cfg.observer_v0 = parse_vec3(k, v);
         }
       }},
      {"observer.b0_deg_s", [&](const auto& k, const auto& v) { cfg.observer_b0 = parse_vec3(k, v) * kDeg; }},
      {"gains.k_v", real(cfg.gains.k_v)},
      {"gains.k_R", real(cfg.gains.k_R)},
      {"gains.k_b", real(cfg.gains.k_b)},
      {"gains.rho1", real(cfg.gains.rho1)},
      {"gains.rho2", real(cfg.gains.rho2)},
      {"gains.c5", real(cfg.gains.c5)},
      {"gains.eps_proj", real(cfg.gains.eps_proj)},
      {"hybrid.delta", real(cfg.hybrid.delta)},
      {"hybrid.alpha", real(cfg.hybrid.alpha)},
      {"hybrid.u1", vec(cfg.hybrid.basis[0])},
      {"hybrid.u2", vec(cfg.hybrid.basis[1])},
      {"hybrid.u3", vec(cfg.hybrid.basis[2])},
      {"sim.mode", [&](const auto&, const auto& v) { cfg.mode = parse_run_mode(v); }},
      {"sim.dt", real(cfg.run.dt)},
      {"sim.t_end", real(cfg.run.t_end)},
      {"sim.lyapunov_mu", real(cfg.run.lyapunov_mu)},
      {"sim.record_every",
       [&](const auto& k, const auto& v) {
         const double n = parse_number(k, v);
         if (n < 1 || n != std::floor(n)) throw ConfigError("config key 'sim.record_every': expected an integer >= 1");
         cfg.run.record_every = static_cast<int>(n);
       }},
      {"sim.output", [&](const auto&, const auto& v) { cfg.output = v; }},
      {"constants.grid_dt", real(cfg.constants_grid_dt)},
      {"certificate.eps_R", real(cfg.certificate.eps_R)},
      {"certificate.B_a", real(cfg.certificate.B_a)},
      {"certificate.eps_a", real(cfg.certificate.eps_a)},
      {"certificate.mu", real(cfg.certificate.mu)},
      {"certificate.r_a0_norm",
       [&](const auto& k, const auto& v) {
         if (v != "auto") cfg.certificate_r_a0_norm = parse_real(k, v);
       }},
      {"certificate.r_dist0",
       [&](const auto& k, const auto& v) {
         if (v != "auto") cfg.certificate_r_dist0 = parse_real(k, v);
       }},
  };

  for (const auto& [key, value] : kv) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(key, value);
  }

  if (truth_rot) cfg.trajectory.r0 = parse_axis_angle("truth.r0_axis", truth_axis, truth_angle_deg);
  if (obs_rot) cfg.observer_r0 = parse_axis_angle("observer.r0_axis", obs_axis, obs_angle_deg);

  try {
    cfg.sensors.validate();
    cfg.gains.validate();
    if (cfg.mode == RunMode::kHybrid) cfg.hybrid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.run.dt > 0.0 && cfg.run.dt <= 0.1)) throw ConfigError("sim.dt must lie in (0, 0.1]");
  if (!(cfg.run.t_end > 0.0)) throw ConfigError("sim.t_end must be positive");
  if (!(cfg.run.lyapunov_mu > 0.0)) throw ConfigError("sim.lyapunov_mu must be positive");
  if (!(cfg.constants_grid_dt > 0.0)) throw ConfigError("constants.grid_dt must be positive");
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ConfigError("error reading config file '" + path.string() + "'");
  return parse_config(buf.str());
}

}  // namespace velaid
