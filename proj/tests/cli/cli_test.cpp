#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

// CLI_BINARY and WORK_DIR are injected by the build.
const std::string kCli = CLI_BINARY;
const std::string kWork = WORK_DIR;

std::string path_of(const std::string& name) { return kWork + "/" + name; }

void write_file(const std::string& name, const std::string& body) {
  std::ofstream out(path_of(name), std::ios::binary);
  REQUIRE(out.good());
  out << body;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >" + path_of("stdout.txt") +
                          " 2>" + path_of("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string stderr_text() { return read_file(path_of("stderr.txt")); }

const char* kBenchmarkConfig = R"({
  "market": {
    "capacities": [700, 900],
    "total_rate": 1200,
    "access_price": 0.5,
    "repayment": 0.9,
    "ad_rate": 1.0
  },
  "profile": {"gammas": [0.0, 1.0]},
  "simulation": {"horizon": 200000, "seed": 1}
})";

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("validate accepts a sound scenario") {
  write_file("ok.json", kBenchmarkConfig);
  CHECK(run("validate --config " + path_of("ok.json")) == 0);
}

TEST_CASE("validate reports assumption violations with exit 3") {
  write_file("bad.json", R"({
    "market": {"capacities": [900, 700], "total_rate": 1200,
               "access_price": 0.5}
  })");
  CHECK(run("validate --config " + path_of("bad.json")) == 3);
}

TEST_CASE("unknown config keys exit 2 naming the key") {
  write_file("typo.json", R"({
    "market": {"capacities": [700, 900], "total_rate": 1200,
               "access_price": 0.5, "acess_pric": 1}
  })");
  CHECK(run("validate --config " + path_of("typo.json")) == 2);
  CHECK(stderr_text().find("acess_pric") != std::string::npos);
}

TEST_CASE("malformed JSON and missing files exit 2") {
  write_file("broken.json", "{ not json");
  CHECK(run("validate --config " + path_of("broken.json")) == 2);
  CHECK(run("validate --config " + path_of("no_such_file.json")) == 2);
  CHECK(run("equilibrium") == 2);  // --config is required
}

TEST_CASE("equilibrium CSV is bit-identical across runs") {
  write_file("eq.json", R"({
    "market": {"capacities": [700, 900], "total_rate": 1200,
               "access_price": 0.5, "repayment": 0.9},
    "profile": {"gammas": [0.0, 1.0]},
    "sweep": {"axis": "c", "from": 0.1, "to": 1.0, "points": 25}
  })");
  const std::string base = "equilibrium --config " + path_of("eq.json");
  CHECK(run(base + " --out " + path_of("eq1.csv")) == 0);
  CHECK(run(base + " --out " + path_of("eq2.csv")) == 0);
  const std::string a = read_file(path_of("eq1.csv"));
  CHECK(a == read_file(path_of("eq2.csv")));
  const auto lines = lines_of(a);
  REQUIRE(lines.size() == 26);
  CHECK(lines[0] == "c,lambda1,lambda2,alpha,delay,u1,u2");
  CHECK(a.find("\r") == std::string::npos);
}

TEST_CASE("symmetric sweep keeps the delay at the neutral baseline") {
  write_file("sym.json", R"({
    "market": {"capacities": [700, 900], "total_rate": 1200,
               "access_price": 0.5},
    "profile": {"gammas": [1.0, 1.0]},
    "sweep": {"axis": "c", "from": 0.1, "to": 2.0, "points": 20}
  })");
  CHECK(run("equilibrium --config " + path_of("sym.json") + " --out " +
            path_of("sym.csv")) == 0);
  const auto lines = lines_of(read_file(path_of("sym.csv")));
  REQUIRE(lines.size() == 21);
  for (size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string cell;
    for (int f = 0; f < 5; ++f) std::getline(row, cell, ',');
    CHECK(std::stod(cell) == doctest::Approx(2.0 / 400.0).epsilon(1e-12));
  }
}

TEST_CASE("delay-sweep reports the threshold price") {
  write_file("ds.json", R"({
    "market": {"capacities": [700, 900], "total_rate": 1200,
               "access_price": 0.5},
    "profile": {"gammas": [0.0, 1.0]},
    "sweep": {"axis": "c", "from": 0.0001, "to": 1.0, "points": 80,
              "log": true}
  })");
  CHECK(run("delay-sweep --config " + path_of("ds.json") + " --out " +
            path_of("ds.csv") + " --svg " + path_of("ds.svg")) == 0);
  const auto lines = lines_of(read_file(path_of("ds.csv")));
  REQUIRE(lines.size() == 81);
  CHECK(lines[0] == "c,delay,neutral_delay,threshold_price");
  std::istringstream row(lines[1]);
  std::string cell;
  for (int f = 0; f < 4; ++f) std::getline(row, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(0.0012698412698).epsilon(1e-6));
  CHECK(read_file(path_of("ds.svg")).find("<svg") != std::string::npos);
}

TEST_CASE("simulate is reproducible and within tolerance") {
  write_file("sim.json", kBenchmarkConfig);
  const std::string base = "simulate --config " + path_of("sim.json");
  CHECK(run(base + " --out " + path_of("sim1.csv")) == 0);
  CHECK(run(base + " --out " + path_of("sim2.csv")) == 0);
  CHECK(read_file(path_of("sim1.csv")) == read_file(path_of("sim2.csv")));
  CHECK(stderr_text().find("passed") != std::string::npos);

  // a different seed changes the bytes
  CHECK(run(base + " --seed 99 --out " + path_of("sim3.csv")) == 0);
  CHECK(read_file(path_of("sim1.csv")) != read_file(path_of("sim3.csv")));
}

TEST_CASE("simulate surfaces model violations with exit 3") {
  write_file("unstable.json", R"({
    "market": {"capacities": [700, 900], "total_rate": 1600.5,
               "access_price": 0.0001},
    "profile": {"gammas": [1.0, 1.0]},
    "simulation": {"horizon": 1000, "seed": 1}
  })");
  CHECK(run("simulate --config " + path_of("unstable.json")) == 3);
  CHECK(stderr_text().find("assumption violation") != std::string::npos);
}

TEST_CASE("pne-rgf sweep emits thresholds and equilibria") {
  write_file("pne.json", R"({
    "market": {"capacities": [700, 900], "total_rate": 1000,
               "access_price": 0.5, "repayment": 0.9, "ad_rate": 1.0,
               "exogenous_rate": 100},
    "sweep": {"axis": "lambda0", "from": 0, "to": 250, "points": 26}
  })");
  CHECK(run("pne-rgf --config " + path_of("pne.json") + " --out " +
            path_of("pne.csv")) == 0);
  const auto lines = lines_of(read_file(path_of("pne.csv")));
  REQUIRE(lines.size() == 27);
  CHECK(lines[0] ==
        "lambda0,threshold_ss,threshold_nn,rho_over_beta,pne,rgf_at_pne");
  for (size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].find("(N;S)") == std::string::npos);
  }
}

TEST_CASE("multi-isp sweep keeps rgf2 at one") {
  write_file("duo.json", R"({
    "duopoly": {"capacities": [700, 900], "total_rate": 900,
                "price_isp1": 0.7, "price_isp2": 0.9, "repayment": 0.9,
                "ad_rate": 1.0, "exogenous_rate": 300},
    "sweep": {"axis": "c2", "from": 0.75, "to": 2.0, "points": 20}
  })");
  CHECK(run("multi-isp --config " + path_of("duo.json") + " --out " +
            path_of("duo.csv")) == 0);
  const auto lines = lines_of(read_file(path_of("duo.csv")));
  REQUIRE(lines.size() == 21);
  std::string first_rgf1;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string cell, rgf1, rgf2;
    for (int f = 0; f < 7; ++f) {
      std::getline(row, cell, ',');
      if (f == 5) rgf1 = cell;
      if (f == 6) rgf2 = cell;
    }
    CHECK(std::stod(rgf2) == doctest::Approx(1.0));
    if (first_rgf1.empty()) first_rgf1 = rgf1;
    CHECK(rgf1 == first_rgf1);  // c2 has no effect on RGF1
  }
}

TEST_CASE("best-response respects the grid override") {
  write_file("br.json", R"({
    "market": {"capacities": [700, 900], "total_rate": 1200,
               "access_price": 0.5, "repayment": 0.9}
  })");
  CHECK(run("best-response --config " + path_of("br.json") +
            " --grid 41 --out " + path_of("br.csv")) == 0);
  const auto lines = lines_of(read_file(path_of("br.csv")));
  CHECK(lines.size() == 42);
  CHECK(lines[0] == "opponent_gamma,br_cp1,br_cp2");
}
