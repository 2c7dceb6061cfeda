#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string cli_path() {
  const char* env = std::getenv("TUNNELGATE_CLI");
  REQUIRE_MESSAGE(env != nullptr,
                  "TUNNELGATE_CLI must point at the tunnelgate binary");
  return env;
}

RunResult run_cli(const std::string& args) {
  const std::string err_file =
      (std::filesystem::temp_directory_path() / "tunnelgate_cli_err.txt")
          .string();
  const std::string cmd =
      cli_path() + " " + args + " 2>" + err_file;
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.out.append(buf, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_file);
  std::stringstream ss;
  ss << err.rdbuf();
  result.err = ss.str();
  return result;
}

struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (csv.columns.empty()) {
      csv.columns = fields;
    } else {
      csv.rows.push_back(fields);
    }
  }
  return csv;
}

std::string cell(const Csv& csv, std::size_t row, const std::string& name) {
  for (std::size_t i = 0; i < csv.columns.size(); ++i) {
    if (csv.columns[i] == name) {
      return i < csv.rows[row].size() ? csv.rows[row][i] : "";
    }
  }
  FAIL("missing column ", name);
  return "";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("phase-time with no barriers reports pure free flight") {
  const RunResult run = run_cli(
      "phase-time --energy 5 --potential 5.5 --width 0 --gap 10");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.out);
  REQUIRE(csv.rows.size() == 1);
  const double tau_exact = std::stod(cell(csv, 0, "tau_exact"));
  const double tau_free = std::stod(cell(csv, 0, "tau_free"));
  CHECK(std::abs(tau_exact - tau_free) <= 1e-12 * tau_free);
  CHECK(std::stod(cell(csv, 0, "delta_t")) == 0.0);
  CHECK(cell(csv, 0, "verdict") == "subluminal");
  CHECK(cell(csv, 0, "error").empty());
}

TEST_CASE("degenerate potential leaves the branch columns empty") {
  const RunResult run =
      run_cli("phase-time --energy 5 --potential 5 --width 0.1 --gap 10");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.out);
  CHECK(cell(csv, 0, "branch") == "degenerate");
  CHECK_FALSE(cell(csv, 0, "tau_exact").empty());
  CHECK(cell(csv, 0, "tau_branch").empty());
  CHECK(cell(csv, 0, "delta_t").empty());
  CHECK(cell(csv, 0, "v_traversal").empty());
  CHECK(cell(csv, 0, "verdict").empty());
}

TEST_CASE("fast branch-a point above the curve is superluminal") {
  // beta = 0.9 needs E = 1/sqrt(0.19); a/L = 0.5 lies above the 0.36 curve.
  const RunResult run = run_cli(
      "phase-time --energy 2.2941573387056176 --potential 2.7941573387056176 "
      "--width 1 --gap 2");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.out);
  CHECK(cell(csv, 0, "branch") == "a");
  CHECK(cell(csv, 0, "verdict") == "superluminal");
}

TEST_CASE("supercritical input exits 2 with a machine-readable reason") {
  const RunResult run = run_cli(
      "phase-time --energy 1.4142135623730951 --potential 2.42 --width 0.1 "
      "--gap 1");
  CHECK(run.exit_code == 2);
  CHECK(run.err.find("KleinRegime") != std::string::npos);
  CHECK(run.out.empty());
}

TEST_CASE("a singular evaluation denominator exits 3") {
  // Energy barely above rest with V0 within ~1e-15 of the supercritical
  // edge collapses gamma^2 + delta^2 below the evaluation guard.
  const RunResult run = run_cli(
      "phase-time --energy 1.0000000001 --potential 2.0000000000999991 "
      "--width 0.1 --gap 1");
  CHECK(run.exit_code == 3);
  CHECK(run.err.find("SingularDenominator") != std::string::npos);
}

TEST_CASE("si inputs are converted once at the boundary") {
  // Electron given 2 mc^2 of total energy; all outputs in natural units.
  const RunResult run = run_cli(
      "phase-time --units si --mass 9.1093837015e-31 --energy 1021997.9 "
      "--potential 766498.425 --width 3.8615926796e-13 --gap "
      "3.8615926796e-12");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.out);
  CHECK(std::stod(cell(csv, 0, "energy")) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::stod(cell(csv, 0, "potential")) ==
        doctest::Approx(1.5).epsilon(1e-6));
  CHECK(std::stod(cell(csv, 0, "width")) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::stod(cell(csv, 0, "gap")) == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(cell(csv, 0, "branch") == "b");
  CHECK(run.out.find("# input-units si") != std::string::npos);
}

TEST_CASE("energy sweep crosses the degenerate point branch by branch") {
  const RunResult run = run_cli(
      "sweep --axis energy --min 4.8 --max 5.2 --samples 5 --energy 5 "
      "--potential 5 --width 0.1 --gap 2");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.out);
  REQUIRE(csv.rows.size() == 5);
  CHECK(cell(csv, 0, "branch") == "a");
  CHECK(cell(csv, 1, "branch") == "a");
  CHECK(cell(csv, 2, "branch") == "degenerate");
  CHECK(cell(csv, 3, "branch") == "b");
  CHECK(cell(csv, 4, "branch") == "b");
}

TEST_CASE("width sweep keeps the gain monotone for a fast branch-a system") {
  const RunResult run = run_cli(
      "sweep --axis width --min 0 --max 0.5 --samples 6 --energy "
      "2.2941573387056176 --potential 2.7941573387056176 --gap 5");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.out);
  REQUIRE(csv.rows.size() == 6);
  double last = -1.0;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double gain = std::stod(cell(csv, i, "delta_t"));
    CHECK(gain >= last);
    last = gain;
  }
}

TEST_CASE("failing sweep rows keep their error code, success keeps exit 0") {
  const RunResult run = run_cli(
      "sweep --axis energy --min 0.5 --max 5 --samples 4 --energy 5 "
      "--potential 5.2 --width 0.1 --gap 2");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.out);
  REQUIRE(csv.rows.size() == 4);
  CHECK(cell(csv, 0, "error") == "EnergyBelowRest");
  CHECK(cell(csv, 0, "tau_exact").empty());
  CHECK(cell(csv, 3, "error").empty());
}

TEST_CASE("a sweep with no valid row exits 2") {
  const RunResult run = run_cli(
      "sweep --axis energy --min 0.1 --max 0.9 --samples 3 --energy 5 "
      "--potential 5.2 --width 0.1 --gap 2");
  CHECK(run.exit_code == 2);
}

TEST_CASE("gap sweep drives the traversal velocity down to V_g") {
  const RunResult run = run_cli(
      "sweep --axis gap --min 1 --max 1000 --samples 4 --energy "
      "2.2941573387056176 --potential 2.7941573387056176 --width 0.2");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.out);
  const double vt_far = std::stod(cell(csv, 3, "v_traversal"));
  CHECK(std::abs(vt_far - 0.9) < 1e-3);
}

TEST_CASE("curve emits the frozen schema with feasibility flags") {
  const RunResult run = run_cli(
      "curve --branch a --beta-min 0.9 --beta-max 0.95 --samples 2");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.out);
  REQUIRE(csv.columns ==
          std::vector<std::string>{"branch", "beta", "alpha_ratio",
                                   "feasible"});
  REQUIRE(csv.rows.size() == 2);
  CHECK(cell(csv, 0, "branch") == "a");
  CHECK(std::stod(cell(csv, 0, "alpha_ratio")) ==
        doctest::Approx(0.36).epsilon(1e-10));
  CHECK(cell(csv, 0, "feasible") == "true");

  const RunResult infeasible = run_cli(
      "curve --branch a --beta-min 0.5 --beta-max 0.6 --samples 2");
  const Csv icsv = parse_csv(infeasible.out);
  CHECK(cell(icsv, 0, "feasible") == "false");
}

TEST_CASE("curve rejects a bad beta range with exit 2") {
  CHECK(run_cli("curve --beta-min 0.9 --beta-max 0.2 --samples 10").exit_code ==
        2);
  CHECK(run_cli("curve --beta-min 0 --beta-max 0.5 --samples 10").exit_code ==
        2);
}

TEST_CASE("json output carries the same keys and values as csv") {
  const std::string args =
      "phase-time --energy 5 --potential 5.5 --width 0.05 --gap 10";
  const RunResult csv_run = run_cli(args);
  const RunResult json_run = run_cli(args + " --format json");
  REQUIRE(csv_run.exit_code == 0);
  REQUIRE(json_run.exit_code == 0);
  const Csv csv = parse_csv(csv_run.out);
  const nlohmann::json arr = nlohmann::json::parse(json_run.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 1);
  for (const char* key :
       {"tau_exact", "tau_branch", "tau_free", "delta_t", "v_traversal"}) {
    const double from_csv = std::stod(cell(csv, 0, key));
    const double from_json = arr[0][key].get<double>();
    CHECK(from_csv == doctest::Approx(from_json).epsilon(1e-12));
  }
  CHECK(arr[0]["branch"].get<std::string>() == "a");
}

TEST_CASE("file output is atomic and byte-deterministic") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "tunnelgate_cli_out";
  fs::create_directories(dir);
  const fs::path target = dir / "sweep.csv";
  const std::string args =
      "sweep --axis width --min 0 --max 0.4 --samples 7 --energy 5 "
      "--potential 5.5 --gap 10 --out " + target.string();
  REQUIRE(run_cli(args).exit_code == 0);
  REQUIRE(fs::exists(target));
  CHECK_FALSE(fs::exists(target.string() + ".tmp"));
  std::ifstream first_in(target, std::ios::binary);
  std::stringstream first;
  first << first_in.rdbuf();
  first_in.close();
  REQUIRE(run_cli(args).exit_code == 0);
  std::ifstream second_in(target, std::ios::binary);
  std::stringstream second;
  second << second_in.rdbuf();
  CHECK(first.str() == second.str());
  CHECK(first.str().find("# tunnelgate v") == 0);
  fs::remove_all(dir);
}

TEST_CASE("verify passes clean and fails under fault injection") {
  const RunResult clean = run_cli("verify");
  CHECK(clean.exit_code == 0);
  CHECK(clean.out.find("verification passed") != std::string::npos);

  const RunResult corrupted = run_cli("verify --corrupt-h1");
  CHECK(corrupted.exit_code == 1);
  CHECK(corrupted.out.find("FAIL") != std::string::npos);
}

}  // TEST_SUITE
