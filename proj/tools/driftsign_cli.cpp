#include <cerrno>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "driftsign/decision.hpp"
#include "driftsign/model.hpp"
#include "driftsign/montecarlo.hpp"
#include "driftsign/serialize.hpp"
#include "driftsign/simulation.hpp"
#include "driftsign/thresholds.hpp"
#include "driftsign/value_functions.hpp"

namespace {

using driftsign::Estimator;
using driftsign::McOptions;
using driftsign::Parameters;
using driftsign::Scheme;
using driftsign::SimConfig;
using driftsign::ThresholdRule;

struct CliSettings {
  double mu = 1.0;
  double p = 0.5;
  double c0 = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double dt = 1e-3;
  double t_max = 0.0;
  double m_stop = 0.9999;
  std::uint64_t seed = 1;
  long n_paths = 10000;
  std::string estimator = "conditioned";
  std::string offsets = "-0.1,-0.05,0,0.05,0.1";
  std::string scheme = "exact_posterior";
  int threads = 0;
  double tol = 1e-12;
  std::string out;

  Parameters params() const { return {mu, p, c0, c1, c2}; }

  SimConfig sim_config() const {
    SimConfig cfg;
    cfg.dt = dt;
    cfg.t_max = t_max;
    cfg.m_stop = m_stop;
    cfg.seed = seed;
    if (scheme == "exact_posterior")
      cfg.scheme = Scheme::exact_posterior;
    else if (scheme == "euler_sde")
      cfg.scheme = Scheme::euler_sde;
    else
      throw std::invalid_argument(
          "scheme must be exact_posterior or euler_sde");
    return cfg;
  }

  Estimator estimator_kind() const {
    if (estimator == "raw") return Estimator::raw;
    if (estimator == "conditioned") return Estimator::conditioned;
    throw std::invalid_argument("estimator must be raw or conditioned");
  }

  McOptions mc_options() const {
    McOptions opts;
    opts.n_workers = threads;
    opts.threshold_tol = tol;
    return opts;
  }

  std::vector<double> offset_list() const {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= offsets.size()) {
      const std::size_t comma = offsets.find(',', pos);
      const std::string item = offsets.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(item.c_str(), &end);
      if (errno != 0 || end == item.c_str() || *end != '\0')
        throw std::invalid_argument("offsets: cannot parse '" + item + "'");
      values.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return values;
  }
};

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

nlohmann::ordered_json config_echo(const CliSettings& s) {
  return nlohmann::ordered_json{
      {"mu", s.mu},           {"p", s.p},
      {"c0", s.c0},           {"c1", s.c1},
      {"c2", s.c2},           {"dt", s.dt},
      {"t_max", driftsign::resolved_t_max(s.params(), s.sim_config())},
      {"m_stop", s.m_stop},   {"seed", s.seed},
      {"n_paths", s.n_paths}, {"estimator", s.estimator},
      {"offsets", s.offsets}, {"scheme", s.scheme},
      {"tol", s.tol}};
}

nlohmann::ordered_json result_shell(const std::string& command,
                                    const CliSettings& s) {
  return nlohmann::ordered_json{{"command", command},
                                {"config", config_echo(s)},
                                {"generated_at", timestamp_utc()}};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open --out file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(Output& out, const nlohmann::ordered_json& j) {
  out.stream() << j.dump(2) << '\n';
}

int cmd_thresholds(const CliSettings& s) {
  const auto thr = driftsign::solve_thresholds(s.params(), s.tol);
  auto j = result_shell("thresholds", s);
  j["thresholds"] = driftsign::to_json(thr);
  if (std::abs(s.c1 - 2.0 * s.c0) <= 1e-12 * std::max(1.0, s.c1))
    j["note"] = "c1 = 2 c0, so a = b";
  Output out(s.out);
  emit_json(out, j);
  return 0;
}

int cmd_value(const CliSettings& s, double x_min, double x_max, int grid_n) {
  const auto ctx = driftsign::make_context(s.params(), s.tol);
  Output out(s.out);
  driftsign::write_value_table(out.stream(), ctx, x_min, x_max, grid_n);
  return 0;
}

int cmd_simulate(const CliSettings& s, std::uint64_t path_index) {
  const auto params = s.params();
  const auto ctx = driftsign::make_context(params, s.tol);
  const auto path = driftsign::simulate_path(params, s.sim_config(), path_index);
  const ThresholdRule rule{ctx.thresholds.a, ctx.thresholds.b};
  const auto traj = driftsign::run_rule(rule, path);
  Output out(s.out);
  driftsign::write_path_csv(out.stream(), path, traj.d_process());
  return 0;
}

int cmd_risk(const CliSettings& s) {
  const auto params = s.params();
  const auto thr = driftsign::solve_thresholds(params, s.tol);
  const ThresholdRule rule{thr.a, thr.b};
  const auto est = driftsign::estimate_risk(params, rule, s.sim_config(),
                                            s.n_paths, s.estimator_kind(),
                                            s.mc_options());
  auto j = result_shell("risk", s);
  j["thresholds"] = driftsign::to_json(thr);
  j["risk"] = driftsign::to_json(est);
  Output out(s.out);
  emit_json(out, j);
  return est.unreliable ? 2 : 0;
}

int cmd_sweep(const CliSettings& s, const std::string& format) {
  const auto sweep = driftsign::optimality_sweep(
      s.params(), s.sim_config(), s.n_paths, s.offset_list(), s.mc_options());
  Output out(s.out);
  bool unreliable = false;
  for (const auto& cell : sweep.cells)
    if (!cell.skipped && cell.estimate.unreliable) unreliable = true;
  if (format == "csv") {
    driftsign::write_sweep_csv(out.stream(), sweep);
  } else {
    auto j = result_shell("sweep", s);
    j["sweep"] = driftsign::to_json(sweep);
    emit_json(out, j);
  }
  return unreliable ? 2 : 0;
}

int cmd_verify(const CliSettings& s, int grid_size, double vtol) {
  const auto ctx = driftsign::make_context(s.params(), s.tol);
  const auto reports = driftsign::verify_properties(ctx, grid_size, vtol);
  bool all_passed = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    all_passed = all_passed && r.passed;
    arr.push_back(driftsign::to_json(r));
  }
  auto j = result_shell("verify", s);
  j["thresholds"] = driftsign::to_json(ctx.thresholds);
  j["properties"] = arr;
  j["all_passed"] = all_passed;
  Output out(s.out);
  emit_json(out, j);
  return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sequential test of a Brownian drift sign with revisable decisions: "
      "threshold solver, value functions, path simulation, and Monte Carlo "
      "risk estimation"};
  app.require_subcommand(1);

  CliSettings s;
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "flat key=value config file")
      ->envname("DRIFTSIGN_CONFIG");
  app.add_option("--mu", s.mu, "signal drift magnitude (> 0)");
  app.add_option("--p", s.p, "prior probability of drift sign +1");
  app.add_option("--c0", s.c0, "observation cost rate");
  app.add_option("--c1", s.c1, "wrong-decision cost rate");
  app.add_option("--c2", s.c2, "cost per decision change");
  app.add_option("--dt", s.dt, "simulation step");
  app.add_option("--t_max", s.t_max, "horizon cap (0 = per-instance default)");
  app.add_option("--m_stop", s.m_stop, "absorption proxy in [0.9, 1)");
  app.add_option("--seed", s.seed, "RNG seed");
  app.add_option("--n_paths", s.n_paths, "Monte Carlo path count");
  app.add_option("--estimator", s.estimator, "raw | conditioned");
  app.add_option("--offsets", s.offsets,
                 "comma-separated sweep offsets (must include 0)");
  app.add_option("--scheme", s.scheme, "exact_posterior | euler_sde");
  app.add_option("--threads", s.threads, "worker count (0 = hardware)");
  app.add_option("--tol", s.tol, "threshold solver tolerance");
  app.add_option("--out", s.out, "write output to this file instead of stdout");

  auto add_cmd = [&app](const std::string& name, const std::string& desc) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->fallthrough();
    return cmd;
  };

  auto* thresholds_cmd =
      add_cmd("thresholds", "solve the decision boundaries a, b, k");

  double x_min = -1.0, x_max = 1.0;
  int grid_n = 401;
  auto* value_cmd =
      add_cmd("value", "CSV table of the value functions");
  value_cmd->add_option("--x_min", x_min, "grid start");
  value_cmd->add_option("--x_max", x_max, "grid end");
  value_cmd->add_option("--grid_n", grid_n, "grid points");

  std::uint64_t path_index = 0;
  auto* simulate_cmd =
      add_cmd("simulate", "CSV trace (t, x, m, d) of one path");
  simulate_cmd->add_option("--path_index", path_index, "path substream index");

  auto* risk_cmd =
      add_cmd("risk", "Monte Carlo risk of the optimal rule");

  std::string sweep_format = "json";
  auto* sweep_cmd = add_cmd(
      "sweep", "common-random-numbers sweep around the optimal thresholds");
  sweep_cmd->add_option("--format", sweep_format, "json | csv");

  int grid_size = 512;
  double vtol = 1e-9;
  auto* verify_cmd = add_cmd(
      "verify", "numerical check of the value-function properties");
  verify_cmd->add_option("--grid_size", grid_size, "check grid size (>= 100)");
  verify_cmd->add_option("--vtol", vtol, "property tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (thresholds_cmd->parsed()) return cmd_thresholds(s);
    if (value_cmd->parsed()) return cmd_value(s, x_min, x_max, grid_n);
    if (simulate_cmd->parsed()) return cmd_simulate(s, path_index);
    if (risk_cmd->parsed()) return cmd_risk(s);
    if (sweep_cmd->parsed()) return cmd_sweep(s, sweep_format);
    if (verify_cmd->parsed()) return cmd_verify(s, grid_size, vtol);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
