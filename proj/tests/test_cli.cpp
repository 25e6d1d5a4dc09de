#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

// End-to-end checks against the installed command-line binary.  Everything
// here runs the real executable through the shell and inspects bytes, exit
// codes, and parsed JSON, so it doubles as a determinism test.

namespace {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + "\"" + MOMENTBC_CLI_PATH + "\" " + args +
                          " > cli_out.tmp 2> cli_err.tmp";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp("cli_out.tmp");
  r.err = slurp("cli_err.tmp");
  return r;
}

nlohmann::json as_json(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

TEST_CASE("solve recovers the symmetric two-atom example exactly") {
  write_file("cli_solve.json", R"({"moments": [1, 0, 1, 0], "backend": "rational"})");
  const RunResult r = run_cli("solve --in cli_solve.json --order 2");
  REQUIRE(r.status == 0);
  const auto j = as_json(r.out);
  CHECK(j["schema"] == "momentbc/1");
  CHECK(j["command"] == "solve");
  CHECK(j["backend"] == "rational");
  CHECK(j["atoms"] == nlohmann::json::parse(R"(["-1", "1"])"));
  CHECK(j["weights"] == nlohmann::json::parse(R"(["1/2", "1/2"])"));
  CHECK(j["max_relative_moment_error"].get<double>() == 0.0);

  // Same command, same bytes.
  const RunResult again = run_cli("solve --in cli_solve.json --order 2");
  CHECK(again.out == r.out);
}

TEST_CASE("solve on the float backend stays within tolerance") {
  write_file("cli_solve_f.json", R"({"moments": [1, 0, 1, 0]})");
  const RunResult r = run_cli("solve --in cli_solve_f.json --order 2");
  REQUIRE(r.status == 0);
  const auto j = as_json(r.out);
  CHECK(j["backend"] == "f64");
  REQUIRE(j["atoms"].size() == 2);
  CHECK(j["atoms"][0].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(j["atoms"][1].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j["weights"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("failures exit with status one and a coded message") {
  write_file("cli_short.json", R"({"moments": [1, 0]})");
  const RunResult r = run_cli("solve --in cli_short.json --order 2");
  CHECK(r.status == 1);
  CHECK(r.out.empty());
  CHECK(r.err.rfind("insufficient-moments:", 0) == 0);
}

TEST_CASE("roundtrip through simulation is exact on the rational backend") {
  write_file("cli_jacobi.json", R"({"a": [1, 1], "b": [0, 0], "backend": "rational"})");
  const RunResult r = run_cli("roundtrip --in cli_jacobi.json");
  REQUIRE(r.status == 0);
  const auto j = as_json(r.out);
  CHECK(j["sites"] == 2);
  CHECK(j["max_relative_error"].get<double>() == 0.0);
}

TEST_CASE("csv side files open with the schema banner") {
  write_file("cli_solve.json", R"({"moments": [1, 0, 1, 0], "backend": "rational"})");
  const RunResult r =
      run_cli("solve --in cli_solve.json --order 2 --csv cli_side.csv --out cli_main.json");
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  std::istringstream csv(slurp("cli_side.csv"));
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "# schema: momentbc/1");
  REQUIRE(std::getline(csv, line));
  CHECK(line == "lambda,cumulative_mass");
  const auto j = as_json(slurp("cli_main.json"));
  CHECK(j["command"] == "solve");
}

TEST_CASE("worker count does not change the bytes") {
  write_file("cli_det.json",
             R"({"moments": ["1","1/2","1/3","1/4","1/5","1/6","1/7","1/8","1/9"],)"
             R"( "backend": "rational"})");
  const RunResult one =
      run_cli("determinacy --in cli_det.json --problem hamburger --tmax 4",
              "MOMENTBC_THREADS=1 ");
  const RunResult many =
      run_cli("determinacy --in cli_det.json --problem hamburger --tmax 4",
              "MOMENTBC_THREADS=7 ");
  REQUIRE(one.status == 0);
  REQUIRE(many.status == 0);
  CHECK(one.out == many.out);
  const auto j = as_json(one.out);
  CHECK(j["rows_computed"] == 4);
  CHECK(j["problem"] == "hamburger");
}

TEST_CASE("transform without input prints the integer basis triangle") {
  const RunResult r = run_cli("transform --order 4");
  REQUIRE(r.status == 0);
  const auto j = as_json(r.out);
  const auto& m = j["matrix"];
  REQUIRE(m.size() == 4);
  // Unit lower-triangular: odd-degree rows alternate around the diagonal.
  CHECK(m[0] == nlohmann::json::parse("[1, 0, 0, 0]"));
  CHECK(m[1] == nlohmann::json::parse("[0, 1, 0, 0]"));
  CHECK(m[2] == nlohmann::json::parse("[-1, 0, 1, 0]"));
  CHECK(m[3] == nlohmann::json::parse("[0, -2, 0, 1]"));
}

TEST_CASE("simulate reports the boundary response of the free lattice") {
  write_file("cli_sim.json", R"({"a": [1, 1, 1], "b": [0, 0, 0], "T": 4})");
  const RunResult r = run_cli("simulate --in cli_sim.json");
  REQUIRE(r.status == 0);
  const auto j = as_json(r.out);
  CHECK(j["sites"] == 3);
  CHECK(j["horizon"] == 4);
  REQUIRE(j["response"].size() == 4);
  CHECK(j["response"][0].get<double>() == 1.0);
  CHECK(j["response"][1].get<double>() == 0.0);
  CHECK(j["response"][2].get<double>() == 0.0);
}

TEST_CASE("kernel point values match the closed-form corner") {
  write_file("cli_kernel.json",
             R"({"moments": ["1","1/2","1/3","1/4","1/5","1/6"], "backend": "rational"})");
  const RunResult r = run_cli("kernel --in cli_kernel.json --order 3 --z 0 --lambda 0");
  REQUIRE(r.status == 0);
  const auto j = as_json(r.out);
  CHECK(j["kernel"] == "9");
  CHECK(j["kernel_diagonal"] == "9");
  CHECK(j["kappa"] == "1/9");
  CHECK(j["forms_residual"].get<double>() == 0.0);
}

TEST_CASE("check classifies the example sequences") {
  write_file("cli_check.json",
             R"({"moments": ["1","1/2","1/3","1/4","1/5","1/6"], "backend": "rational"})");
  const RunResult r = run_cli("check --in cli_check.json");
  REQUIRE(r.status == 0);
  const auto j = as_json(r.out);
  CHECK(j["verdict"] == "Hausdorff-feasible");

  write_file("cli_check2.json", R"({"moments": [1, 2, 4, 8]})");
  const RunResult r2 = run_cli("check --in cli_check2.json --order 2");
  REQUIRE(r2.status == 0);
  const auto j2 = as_json(r2.out);
  CHECK(j2["verdict"] == "infeasible-at-order-2");
  CHECK(j2["failure_order"] == 2);
}

TEST_CASE("unknown flags are rejected without touching stdout json") {
  const RunResult r = run_cli("solve --nonsense");
  CHECK(r.status != 0);
}
