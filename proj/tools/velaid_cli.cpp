// Command-line harness: simulate, certify, constants, plot.

#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "velaid/config.hpp"
#include "velaid/plot.hpp"
#include "velaid/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kViolation = 2;

int cmd_simulate(const std::string& config, const std::string& mode, const std::string& out) {
  velaid::ScenarioConfig cfg = velaid::load_config(config);
  if (!mode.empty()) cfg.mode = velaid::parse_run_mode(mode);
  if (!out.empty()) cfg.output = out;
  const velaid::RunSummary s = velaid::run_scenario(cfg);
  std::cout << velaid::format_summary(s) << "telemetry: " << cfg.output.string() << '\n';
  if (s.guard_violations > 0) {
    std::cerr << "warning: observability guard failed at " << s.guard_violations << " samples\n";
    return kViolation;
  }
  return kOk;
}

int cmd_constants(const std::string& config) {
  const velaid::ScenarioConfig cfg = velaid::load_config(config);
  const velaid::TrajectoryConstants tc = velaid::scenario_constants(cfg);
  std::cout << velaid::format_constants(tc);
  return tc.assumptions_hold() ? kOk : kViolation;
}

int cmd_certify(const std::string& config) {
  const velaid::ScenarioConfig cfg = velaid::load_config(config);
  const velaid::TrajectoryConstants tc = velaid::scenario_constants(cfg);
  const velaid::Certificate c = velaid::evaluate_certificate(tc, cfg.gains, cfg.certificate_inputs());
  std::cout << velaid::format_constants(tc) << '\n' << velaid::format_certificate(c);
  return tc.assumptions_hold() ? kOk : kViolation;
}

int cmd_plot(const std::string& csv, const std::string& out_dir) {
  for (const auto& p : velaid::emit_plots(csv, out_dir)) std::cout << p.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Velocity-aided attitude observers on SO(3)"};
  app.require_subcommand(1);

  std::string config, mode, out, csv, out_dir;

  auto* sim = app.add_subcommand("simulate", "run the configured scenario and write CSV telemetry");
  sim->add_option("--config", config, "scenario file")->required();
  sim->add_option("--mode", mode, "observer")->check(CLI::IsMember({"continuous", "hybrid", "hua2010", "roberts2011"}));
  sim->add_option("--out", out, "telemetry CSV path (default: sim.output)");

  auto* cert = app.add_subcommand("certify", "evaluate the gain certificate");
  cert->add_option("--config", config, "scenario file")->required();

  auto* cons = app.add_subcommand("constants", "extract trajectory constants");
  cons->add_option("--config", config, "scenario file")->required();

  auto* plot = app.add_subcommand("plot", "render SVG plots from telemetry");
  plot->add_option("--csv", csv, "telemetry CSV")->required();
  plot->add_option("--out-dir", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kIoError;
  }

  try {
    if (*sim) return cmd_simulate(config, mode, out);
    if (*cert) return cmd_certify(config);
    if (*cons) return cmd_constants(config);
    if (*plot) return cmd_plot(csv, out_dir);
  } catch (const velaid::ObservabilityLoss& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  } catch (const velaid::HybridLivelock& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kIoError;
}
