#include "velaid/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace velaid {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

void put(std::ostream& out, double x) {
  if (std::isnan(x)) {
    out << "nan";
    return;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  out.write(buf, res.ptr - buf);
}

double get_double(std::string_view s, std::size_t line) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return x;
}

std::optional<double> settle_time(const Arc& arc, double threshold, double (*metric)(const ArcSample&)) {
  std::optional<double> t;
  for (const ArcSample& s : arc.samples) {
    if (metric(s) < threshold) {
      if (!t) t = s.t;
    } else {
      t.reset();
    }
  }
  return t;
}

double attitude_deg(const ArcSample& s) { return rotation_angle(s.error.r_tilde) * kRadToDeg; }
double bias_norm(const ArcSample& s) { return s.error.b_tilde.norm(); }
double accel_norm(const ArcSample& s) { return s.error.r_a_tilde.norm(); }

std::string fmt_time(const std::optional<double>& t) {
  if (!t) return "not reached";
  std::ostringstream o;
  o << *t << " s";
  return o.str();
}

}  // namespace

CsvRow to_csv_row(const ArcSample& s) {
  CsvRow r;
  r.t = s.t;
  r.j = s.j;
  r.attitude_error_deg = attitude_deg(s);
  r.dist_ri = so3_distance(s.error.r_tilde);
  r.b_tilde = s.error.b_tilde;
  r.r_a_tilde_norm = s.error.r_a_tilde.norm();
  r.phi = s.phi.value_or(std::numeric_limits<double>::quiet_NaN());
  r.v = s.lyapunov;
  r.jump = s.jump;
  return r;
}

void write_csv(std::ostream& out, const Arc& arc) {
  out << kCsvHeaderV1 << '\n';
  for (const ArcSample& s : arc.samples) {
    const CsvRow r = to_csv_row(s);
    put(out, r.t);
    out << ',' << r.j << ',';
    put(out, r.attitude_error_deg);
    out << ',';
    put(out, r.dist_ri);
    for (int i = 0; i < 3; ++i) {
      out << ',';
      put(out, r.b_tilde[i]);
    }
    out << ',';
    put(out, r.r_a_tilde_norm);
    out << ',';
    put(out, r.phi);
    out << ',';
    put(out, r.v);
    out << ',' << (r.jump ? 1 : 0) << '\n';
  }
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeaderV1) throw std::runtime_error("csv: header does not match schema v1");

  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 11) {
      throw std::runtime_error("csv line " + std::to_string(lineno) + ": expected 11 fields, got " +
                               std::to_string(f.size()));
    }
    CsvRow r;
    r.t = get_double(f[0], lineno);
    r.j = static_cast<int>(get_double(f[1], lineno));
    r.attitude_error_deg = get_double(f[2], lineno);
    r.dist_ri = get_double(f[3], lineno);
    r.b_tilde = Vec3(get_double(f[4], lineno), get_double(f[5], lineno), get_double(f[6], lineno));
    r.r_a_tilde_norm = get_double(f[7], lineno);
    r.phi = get_double(f[8], lineno);
    r.v = get_double(f[9], lineno);
    if (f[10] != "0" && f[10] != "1") {
      throw std::runtime_error("csv line " + std::to_string(lineno) + ": jump_flag must be 0 or 1");
    }
    r.jump = f[10] == "1";
    rows.push_back(r);
  }
  if (rows.empty()) throw std::runtime_error("csv: no data rows");
  return rows;
}

RunSummary summarize(const Arc& arc, RunMode mode, const ConvergenceThresholds& th) {
  RunSummary s;
  s.mode = mode;
  s.samples = arc.samples.size();
  s.jumps = arc.jumps;
  s.guard_violations = arc.guard_violations;
  if (arc.samples.empty()) return s;
  const ArcSample& last = arc.samples.back();
  s.t_end = last.t;
  s.final_attitude_deg = attitude_deg(last);
  s.final_bias_error = bias_norm(last);
  s.final_accel_error = accel_norm(last);
  s.t_attitude = settle_time(arc, th.attitude_deg, attitude_deg);
  s.t_bias = settle_time(arc, th.bias, bias_norm);
  s.t_accel = settle_time(arc, th.accel, accel_norm);
  return s;
}

std::string format_summary(const RunSummary& s) {
  std::ostringstream o;
  o << "mode: " << to_string(s.mode) << '\n'
    << "samples: " << s.samples << " (t_end " << s.t_end << " s)\n"
    << "final attitude error: " << s.final_attitude_deg << " deg\n"
    << "final bias error: " << s.final_bias_error << " rad/s\n"
    << "final accel error: " << s.final_accel_error << " m/s^2\n"
    << "attitude < 1 deg from: " << fmt_time(s.t_attitude) << '\n'
    << "bias < 0.005 rad/s from: " << fmt_time(s.t_bias) << '\n'
    << "accel < 0.05 m/s^2 from: " << fmt_time(s.t_accel) << '\n'
    << "guard violations: " << s.guard_violations << '\n'
    << "jumps: " << s.jumps.size() << '\n';
  for (const JumpEvent& e : s.jumps) {
    o << "  t=" << e.t << " j=" << e.j_before << "->" << e.j_before + 1 << " phi " << e.phi_before << " -> "
      << e.phi_after << " axis [" << e.axis.transpose() << "]\n";
  }
  return o.str();
}

ScenarioResult simulate(const ScenarioConfig& cfg) {
  const Scenario sc = cfg.scenario();
  ScenarioResult r;
  switch (cfg.mode) {
    case RunMode::kContinuous:
      r.arc = run_continuous(sc, cfg.gains, ObserverLaw::kProposed, cfg.run);
      break;
    case RunMode::kHybrid:
      r.arc = run_hybrid(sc, cfg.gains, cfg.hybrid, cfg.run);
      break;
    case RunMode::kHua2010:
      r.arc = run_continuous(sc, cfg.gains, ObserverLaw::kHua2010, cfg.run);
      break;
    case RunMode::kRoberts2011:
      r.arc = run_continuous(sc, cfg.gains, ObserverLaw::kRoberts2011, cfg.run);
      break;
  }
  r.summary = summarize(r.arc, cfg.mode);
  return r;
}

RunSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out) {
  ScenarioResult r = simulate(cfg);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + out.string() + "' for writing");
  write_csv(f, r.arc);
  f.flush();
  if (!f) throw std::runtime_error("write to '" + out.string() + "' failed");
  return r.summary;
}

RunSummary run_scenario(const ScenarioConfig& cfg) { return run_scenario(cfg, cfg.output); }

TrajectoryConstants scenario_constants(const ScenarioConfig& cfg) {
  const Scenario sc = cfg.scenario();
  return extract_constants(sc.trajectory, sc.sensors.r_m, cfg.gains.c5, cfg.constants_options());
}

Certificate scenario_certificate(const ScenarioConfig& cfg) {
  return evaluate_certificate(scenario_constants(cfg), cfg.gains, cfg.certificate_inputs());
}

std::string format_constants(const TrajectoryConstants& tc) {
  std::ostringstream o;
  o << "c0 = " << tc.c0 << "\nc1 = " << tc.c1 << "\nc2 = " << tc.c2 << "\nc3 = " << tc.c3 << "\nc4 = " << tc.c4
    << "\nc5 = " << tc.c5 << "\nc_a = " << tc.c_a << "\nc_b = " << tc.c_b
    << "\nlambda_min_Abar = " << tc.lambda_min_Abar << "\nlambda_max_Abar = " << tc.lambda_max_Abar << '\n';
  if (tc.assumptions_hold()) {
    o << "assumptions: hold on the grid\n";
  } else {
    for (const AssumptionViolation& v : tc.violations) o << "VIOLATION at t = " << v.t << ": " << v.message << '\n';
  }
  return o.str();
}

std::string format_certificate(const Certificate& c) {
  std::ostringstream o;
  o << "eps_R = " << c.epsilon_R << "\neps_a = " << c.epsilon_a << "\nB_a = " << c.B_a << "\nmu = " << c.mu
    << " (bound " << c.mu_max << ")\nalpha1..4 = " << c.alpha1 << ", " << c.alpha2 << ", " << c.alpha3 << ", "
    << c.alpha4 << "\nc_omega = " << c.c_omega << "\nk_R_min = " << c.k_R_min << "\nk_v_min = " << c.k_v_min
    << "\nk_v_star = " << c.k_v_star << "\nt_R lower = " << c.t_R_lower << " s\nt_a upper = " << c.t_a_upper
    << " s\n";
  for (const CertificateCondition& k : c.conditions) {
    o << (k.satisfied ? "  ok    " : "  FAIL  ") << k.name << ": " << k.value << " vs " << k.threshold
      << " (margin " << k.margin() << ")\n";
  }
  o << (c.unbounded ? "requirement unbounded\n" : "") << "certificate " << (c.satisfied ? "satisfied" : "not satisfied")
    << " for the configured gains\n";
  return o.str();
}

}  // namespace velaid
