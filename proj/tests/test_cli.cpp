#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "sparsereg/csv.hpp"
#include "sparsereg/sphere.hpp"

using namespace sparsereg;

namespace {

std::string cli_path() { return SPARSEREG_CLI_PATH; }

int run(const std::string& args) {
  const std::string command = cli_path() + " " + args + " 2> cli_stderr.log";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempCsv {
  std::string matrix_path = "cli_matrix.csv";
  std::string y_path = "cli_y.csv";
  TempCsv() {
    const DesignMatrix x = sample_sphere_matrix(8, 12, Seed{990});
    save_matrix_csv(matrix_path, x.data());
    Eigen::VectorXd y(8);
    for (int i = 0; i < 8; ++i) y(i) = std::sin(1.0 + i);
    save_vector_csv(y_path, y);
  }
  ~TempCsv() {
    std::remove(matrix_path.c_str());
    std::remove(y_path.c_str());
  }
};

}  // namespace

TEST_CASE("usage errors exit with status 2") {
  CHECK(run("fit --matrix missing.csv --y also_missing.csv --lambda 0.5 "
            "--out cli_out.json") == 2);
  CHECK(run("verify --suite nonsense --out cli_out.json") == 2);
  CHECK(run("fit") == 2);
  std::remove("cli_out.json");
}

TEST_CASE("fit produces a parseable report and exit 0") {
  TempCsv files;
  CHECK(run("fit --matrix " + files.matrix_path + " --y " + files.y_path +
            " --lambda 0.3 --out cli_fit.json") == 0);
  const auto report = nlohmann::json::parse(slurp("cli_fit.json"));
  CHECK(report["version"].is_string());
  CHECK(report["command"] == "fit");
  CHECK(report["result"]["converged"] == true);
  CHECK(report["result"]["beta"].size() == 12);
  std::remove("cli_fit.json");
}

TEST_CASE("gamma exact method reports an interval") {
  const DesignMatrix eye(Eigen::MatrixXd::Identity(2, 2), true);
  save_matrix_csv("cli_eye.csv", eye.data());
  CHECK(run("gamma --matrix cli_eye.csv --s 1 --rho 0.5 --method exact "
            "--epsilon 0.01 --out cli_gamma.json") == 0);
  const auto report = nlohmann::json::parse(slurp("cli_gamma.json"));
  const double lo = report["result"]["interval"]["lo"];
  const double hi = report["result"]["interval"]["hi"];
  const double target = 1.0 / std::sqrt(2.0);
  CHECK(lo <= target);
  CHECK(hi >= target);
  CHECK(report["result"]["method"] == "exact-net");
  std::remove("cli_eye.csv");
  std::remove("cli_gamma.json");
}

TEST_CASE("verify reruns are byte-identical") {
  const std::string args =
      "verify --suite gamma --n 8 --p0 100 --s 2 --rho 0.5 --trials 8 "
      "--directions 30 --seed 7";
  CHECK(run(args + " --out cli_v1.json --csv cli_v1.csv") == 0);
  CHECK(run(args + " --out cli_v2.json --csv cli_v2.csv") == 0);
  CHECK(slurp("cli_v1.json") == slurp("cli_v2.json"));
  CHECK(slurp("cli_v1.csv") == slurp("cli_v2.csv"));
  CHECK(!slurp("cli_v1.json").empty());
  for (const char* name :
       {"cli_v1.json", "cli_v2.json", "cli_v1.csv", "cli_v2.csv"}) {
    std::remove(name);
  }
}

TEST_CASE("failing suites exit with status 1") {
  // The dot-law suite with a deliberately wrong model dimension.
  CHECK(run("verify --suite dot-law --n 3 --law-dimension 12 "
            "--ks-samples 2000 --out cli_fail.json") == 1);
  const auto report = nlohmann::json::parse(slurp("cli_fail.json"));
  CHECK(report["result"]["pass"] == false);
  // The per-trial table lands next to the report by default.
  CHECK(!slurp("cli_fail.csv").empty());
  std::remove("cli_fail.json");
  std::remove("cli_fail.csv");
}

TEST_CASE("audit composes the documented pieces") {
  TempCsv files;
  CHECK(run("audit --matrix " + files.matrix_path +
            " --s 2 --rho 0.5 --directions 40 --seed 3 "
            "--out cli_audit.json") == 0);
  const auto report = nlohmann::json::parse(slurp("cli_audit.json"));
  CHECK(report["result"].contains("coherence"));
  CHECK(report["result"].contains("sandwich_s"));
  CHECK(report["result"].contains("gamma"));
  CHECK(report["result"]["bound_report"].contains("precondition_nu_ok"));
  std::remove("cli_audit.json");
}

TEST_CASE("fit-aug bypass and seeded reruns") {
  TempCsv files;
  const std::string args = "fit-aug --matrix " + files.matrix_path + " --y " +
                           files.y_path +
                           " --lambda 0.3 --forced-p0 16 --seed 11";
  CHECK(run(args + " --out cli_a1.json") == 0);
  CHECK(run(args + " --out cli_a2.json") == 0);
  CHECK(slurp("cli_a1.json") == slurp("cli_a2.json"));
  const auto report = nlohmann::json::parse(slurp("cli_a1.json"));
  CHECK(report["result"]["p0"] == 16);
  CHECK(report["result"]["beta_0"].size() == 16);
  std::remove("cli_a1.json");
  std::remove("cli_a2.json");
}

TEST_CASE("experiment command emits a suite report") {
  const std::string args =
      "experiment --design sphere --n 12 --p 24 --s 2 --sigma 0.1 "
      "--alpha 1 --trials 3 --seed 5 --gamma-directions 12 --p0-cap 64";
  CHECK(run(args + " --out cli_e1.json --csv cli_e1.csv") == 0);
  CHECK(run(args + " --out cli_e2.json --csv cli_e2.csv") == 0);
  CHECK(slurp("cli_e1.json") == slurp("cli_e2.json"));
  CHECK(slurp("cli_e1.csv") == slurp("cli_e2.csv"));
  const auto report = nlohmann::json::parse(slurp("cli_e1.json"));
  CHECK(report["result"]["suite"] == "experiment");
  for (const char* name :
       {"cli_e1.json", "cli_e2.json", "cli_e1.csv", "cli_e2.csv"}) {
    std::remove(name);
  }
}
