#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "driftsign/model.hpp"

namespace {

int g_checks = 0;
int g_failures = 0;
std::string g_cli;

void check(bool ok, const std::string& what) {
  ++g_checks;
  if (!ok) {
    ++g_failures;
    std::cerr << "FAILED: " << what << '\n';
  }
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_file = "/tmp/driftsign_cli_test_out.txt";
  const std::string cmd =
      '"' + g_cli + "\" " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  result.out = ss.str();
  return result;
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream is(text);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
    if (line.find("generated_at") == std::string::npos) os << line << '\n';
  return os.str();
}

const std::string kReferenceFlags =
    "--mu 0.3333333333333333 --c0 0.6666666666666666 --c1 1 --c2 1.5";

void test_thresholds_values() {
  const auto r = run(kReferenceFlags + " thresholds");
  check(r.exit_code == 0, "thresholds exits 0");
  const auto j = nlohmann::json::parse(r.out);
  const double a = j["thresholds"]["a"].get<double>();
  const double b = j["thresholds"]["b"].get<double>();
  check(std::abs(a - 0.37) <= 0.005, "a near 0.37");
  check(std::abs(b - 0.55) <= 0.005, "b near 0.55");
  check(std::abs(j["thresholds"]["residual_a"].get<double>()) < 1e-10,
        "residual_a small");
  check(j["config"]["c2"].get<double>() == 1.5, "config echoed");
  check(!j.contains("note"), "no equal-boundary note when c1 != 2 c0");

  const auto eq = run("--mu 0.7 --c0 0.5 --c1 1 --c2 1.3 thresholds");
  const auto je = nlohmann::json::parse(eq.out);
  check(je.contains("note"), "equal-boundary note when c1 = 2 c0");
  check(je["thresholds"]["a"] == je["thresholds"]["b"], "a equals b");
}

void test_exit_codes() {
  check(run("--help").exit_code == 0, "help exits 0");
  check(run("thresholds --help").exit_code == 0, "subcommand help exits 0");
  check(run("").exit_code == 1, "missing subcommand exits 1");
  check(run("--c2 0 thresholds").exit_code == 1, "invalid c2 exits 1");
  check(run("--mu -1 thresholds").exit_code == 1, "invalid mu exits 1");
  check(run("--bogus 3 thresholds").exit_code == 1, "unknown flag exits 1");
  check(run("--estimator nonsense " + kReferenceFlags + " risk --n_paths 100")
            .exit_code == 1,
        "bad estimator exits 1");
  check(run("nonsense").exit_code == 1, "unknown subcommand exits 1");

  // Most paths cannot reach the initial threshold inside half a time unit,
  // so the untriggered fraction trips the unreliability flag.
  const auto unreliable =
      run(kReferenceFlags + " --t_max 0.5 --n_paths 200 --seed 3 risk");
  check(unreliable.exit_code == 2, "unreliable estimate exits 2");
  const auto ju = nlohmann::json::parse(unreliable.out);
  check(ju["risk"]["unreliable"].get<bool>(), "unreliable flag set");
  check(ju["risk"]["untriggered"].get<int>() > 0, "untriggered reported");
}

void test_config_file_and_env() {
  const std::string path = "/tmp/driftsign_cli_test_config.txt";
  {
    std::ofstream cfg(path);
    cfg << "mu=1\nc0=1\nc1=1\nc2=1\n";
  }
  const auto from_file = run("--config " + path + " thresholds");
  check(from_file.exit_code == 0, "config file accepted");
  const auto jf = nlohmann::json::parse(from_file.out);
  check(std::abs(jf["thresholds"]["b"].get<double>() -
                 0.7865170376004112) < 1e-9,
        "config file values used");

  const auto overridden = run("--config " + path + " --c2 1.5 thresholds");
  const auto jo = nlohmann::json::parse(overridden.out);
  check(jo["config"]["c2"].get<double>() == 1.5, "flag overrides file");
  check(jo["thresholds"]["b"].get<double>() >
            jf["thresholds"]["b"].get<double>(),
        "override changes the solve");

  setenv("DRIFTSIGN_CONFIG", path.c_str(), 1);
  const auto via_env = run("thresholds");
  unsetenv("DRIFTSIGN_CONFIG");
  check(via_env.exit_code == 0, "env config accepted");
  const auto jv = nlohmann::json::parse(via_env.out);
  check(jv["thresholds"]["b"] == jf["thresholds"]["b"],
        "env config matches explicit --config");

  {
    std::ofstream cfg(path);
    cfg << "mu=1\nnot_a_key=3\n";
  }
  check(run("--config " + path + " thresholds").exit_code == 1,
        "unknown config key exits 1");
}

void test_value_table() {
  const auto thr = run(kReferenceFlags + " thresholds");
  const double k =
      nlohmann::json::parse(thr.out)["thresholds"]["k"].get<double>();

  const auto r =
      run(kReferenceFlags + " value --x_min -0.5 --x_max 0.5 --grid_n 5");
  check(r.exit_code == 0, "value exits 0");
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  check(line == "x,v,u_plus,u_minus", "value header");
  std::vector<double> xs, vs;
  while (std::getline(is, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    xs.push_back(std::stod(cell));
    std::getline(cells, cell, ',');
    vs.push_back(std::stod(cell));
  }
  check(xs.size() == 5, "value row count");
  bool origin_is_k = false;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] == 0.0) origin_is_k = std::abs(vs[i] - k) < 1e-12;
  check(origin_is_k, "V(0) = k in the emitted table");
  check(vs.front() == vs.back(), "V symmetric across the grid");
}

void test_simulate_trace() {
  const auto r = run(kReferenceFlags + " --seed 5 --t_max 1 simulate");
  check(r.exit_code == 0, "simulate exits 0");
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  check(line == "t,x,m,d", "simulate header");
  const driftsign::Parameters params{1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0, 1.5};
  bool beliefs_consistent = true;
  bool decisions_sane = true;
  int rows = 0;
  while (std::getline(is, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    std::getline(cells, cell, ',');
    const double x = std::stod(cell);
    std::getline(cells, cell, ',');
    const double m = std::stod(cell);
    std::getline(cells, cell, ',');
    const int d = std::stoi(cell);
    if (m != driftsign::posterior_mean(params, x).m)
      beliefs_consistent = false;
    if (d != 0 && d != 1 && d != -1) decisions_sane = false;
    ++rows;
  }
  check(rows == 1001, "simulate row count at t_max 1");
  check(beliefs_consistent, "m column recomputes from x column bitwise");
  check(decisions_sane, "d column in {-1, 0, 1}");

  const auto again = run(kReferenceFlags + " --seed 5 --t_max 1 simulate");
  check(again.out == r.out, "simulate byte-identical across runs");
}

void test_determinism_and_threads() {
  const std::string risk_args =
      kReferenceFlags + " --n_paths 150 --dt 0.004 --t_max 500 --seed 11 risk";
  const auto a = run(risk_args + " --threads 1");
  const auto b = run(risk_args + " --threads 4");
  const auto c = run(risk_args + " --threads 1");
  check(a.exit_code == 0, "risk exits 0");
  check(strip_timestamp(a.out) == strip_timestamp(b.out),
        "risk byte-identical across worker counts");
  check(strip_timestamp(a.out) == strip_timestamp(c.out),
        "risk byte-identical across runs");

  const auto ja = nlohmann::json::parse(a.out);
  check(!strip_timestamp(a.out).empty() &&
            a.out.find("generated_at") != std::string::npos,
        "timestamp present but excluded from comparison");
  check(ja["risk"]["mean"].get<double>() > 0.0, "risk mean positive");
}

void test_verify_and_sweep() {
  const auto v = run(kReferenceFlags + " verify");
  check(v.exit_code == 0, "verify exits 0 on the reference instance");
  const auto jv = nlohmann::json::parse(v.out);
  check(jv["all_passed"].get<bool>(), "verify reports all passed");
  check(jv["properties"].size() == 12, "twelve property reports");

  const std::string sweep_args =
      kReferenceFlags +
      " --n_paths 120 --dt 0.004 --t_max 500 --seed 2"
      " --offsets -0.05,0,0.05 sweep";
  const auto s = run(sweep_args + " --format csv");
  check(s.exit_code == 0, "sweep exits 0");
  std::istringstream is(s.out);
  std::string line;
  std::getline(is, line);
  check(line.rfind("da,db,", 0) == 0, "sweep CSV header");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  check(rows == 9, "sweep cell count");

  const auto sj = run(sweep_args);
  const auto js = nlohmann::json::parse(sj.out);
  check(js["sweep"]["cells"].size() == 9, "sweep JSON cells");
  check(js["sweep"]["baseline_index"].get<int>() == 4, "baseline index");
}

void test_out_file() {
  const std::string path = "/tmp/driftsign_cli_test_outfile.json";
  std::remove(path.c_str());
  const auto r = run(kReferenceFlags + " --out " + path + " thresholds");
  check(r.exit_code == 0, "out-file run exits 0");
  check(r.out.empty(), "stdout empty when --out is given");
  std::ifstream in(path);
  check(in.good(), "out file created");
  const auto j = nlohmann::json::parse(in);
  check(std::abs(j["thresholds"]["a"].get<double>() - 0.368066) < 1e-5,
        "out file holds the result");
}

void test_p_one_risk() {
  const auto r = run(kReferenceFlags + " --p 1 --n_paths 100 risk");
  check(r.exit_code == 0, "p = 1 risk exits 0");
  const auto j = nlohmann::json::parse(r.out);
  check(j["risk"]["mean"].get<double>() == 0.0, "p = 1 risk is zero");
  check(j["risk"]["stderr"].get<double>() == 0.0, "p = 1 stderr is zero");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-driftsign>\n";
    return 2;
  }
  g_cli = argv[1];

  test_thresholds_values();
  test_exit_codes();
  test_config_file_and_env();
  test_value_table();
  test_simulate_trace();
  test_determinism_and_threads();
  test_verify_and_sweep();
  test_out_file();
  test_p_one_risk();

  std::cout << g_checks << " checks, " << g_failures << " failures\n";
  return g_failures == 0 ? 0 : 1;
}
