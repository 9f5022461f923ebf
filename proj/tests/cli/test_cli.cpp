#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using qwalk::cli::dispatch;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("measure document") {
  const auto r = run({"measure", "--n", "2", "--event", "0,1,3"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["command"] == "measure");
  CHECK(j["parameters"]["n"] == 2);
  CHECK(j["result"]["mu"]["num"] == 5);
  CHECK(j["result"]["mu"]["log2_den"] == 2);
  CHECK(j["result"]["mu"]["exact"] == "5/4");
  CHECK(j["result"]["mu"]["decimal"] == "1.25");
  CHECK(j["result"]["precluded"] == false);
  CHECK(r.err.empty());
  for (const char* s : {"dense", "pairwise", "rank2"}) {
    const auto other = run({"measure", "--n", "2", "--event", "0,1,3", "--strategy", s});
    CHECK(other.json()["result"] == j["result"]);
  }
  CHECK(run({"measure", "--n", "2", "--event", "0,2"}).json()["result"]["precluded"] == true);
  CHECK(run({"measure", "--n", "3", "--event", "0", "--complement"}).json()["result"]["mu"]["exact"] == "13/8");
}

TEST_CASE("matrix CSV round-trips against JSON") {
  const auto j = run({"matrix", "--n", "3"}).json();
  const auto c = run({"matrix", "--n", "3", "--format", "csv"});
  REQUIRE(c.code == 0);
  CHECK(c.out.rfind("# denominator=2^3\n", 0) == 0);
  const auto rows = csv_rows(c.out);
  REQUIRE(rows.size() == 65);
  CHECK(rows[0] == std::vector<std::string>{"row", "col", "re", "im"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int row = std::stoi(rows[i][0]), col = std::stoi(rows[i][1]);
    CHECK(std::stoi(rows[i][2]) == j["result"]["entries"][row][col][0].get<int>());
    CHECK(std::stoi(rows[i][3]) == j["result"]["entries"][row][col][1].get<int>());
  }
  CHECK(j["result"]["entries"][0][2][0] == -1);
  CHECK(j["result"]["denominator"] == 8);
}

TEST_CASE("output is deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"preclusion", "--n", "3"},
           {"limit", "--event", "at-most-ones:1", "--n-max", "25"},
           {"interference", "--n", "3", "--format", "csv"},
           {"integral", "--n", "4", "--variable", "changes"}}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("size caps and exit codes") {
  const auto capped = run({"matrix", "--n", "9"});
  CHECK(capped.code == qwalk::cli::kResource);
  CHECK(capped.out.empty());
  CHECK(capped.err.find("--force") != std::string::npos);

  const auto forced = run({"matrix", "--n", "9", "--format", "csv", "--force"});
  CHECK(forced.code == 0);
  CHECK(forced.err.find("estimated cost") != std::string::npos);

  CHECK(run({"preclusion", "--n", "7"}).code == qwalk::cli::kResource);
  CHECK(run({"measure", "--n", "70", "--event", "0"}).code == qwalk::cli::kUsage);
  CHECK(run({"measure", "--n", "2", "--event", "9"}).code == qwalk::cli::kUsage);
  CHECK(run({"measure", "--n", "2"}).code == qwalk::cli::kUsage);
  CHECK(run({"limit", "--event", "nowhere", "--n-max", "10"}).code == qwalk::cli::kUsage);
  CHECK(run({"frobnicate"}).code == qwalk::cli::kUsage);
  CHECK(run({"--format", "xml", "matrix", "--n", "1"}).code == qwalk::cli::kUsage);
  CHECK(run({"quadratic"}).code == qwalk::cli::kUsage);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("preclusion listing") {
  const auto j = run({"preclusion", "--n", "3"}).json();
  CHECK(j["result"]["count"] == 15);
  CHECK(j["result"]["events"][0] == Json::array({0, 2}));
  const auto bounded = run({"preclusion", "--n", "6", "--max-card", "2"});
  CHECK(bounded.code == 0);
  CHECK(bounded.json()["parameters"]["max_card"] == 2);
  const auto csv = csv_rows(run({"preclusion", "--n", "3", "--format", "csv"}).out);
  CHECK(csv.size() == 16);
  CHECK(csv[1] == std::vector<std::string>{"2", "0 2"});
}

TEST_CASE("limit tables") {
  const auto j = run({"limit", "--event", "return-to-zero", "--n-max", "30", "--tol", "1e-6"}).json();
  CHECK(j["result"]["approximant"] == "upper");
  CHECK(j["result"]["values"].size() == 30);
  CHECK(j["result"]["verdict"]["label"] == "numerical");

  const auto at_most = run({"limit", "--event", "at-most-ones:1", "--n-max", "40", "--tol", "1e-6"}).json();
  CHECK(at_most["result"]["verdict"]["kind"] == "converged");
  CHECK(at_most["result"]["values"][3]["mu"]["exact"] == "5/16");

  const auto back = run({"limit", "--event", "complement-constant", "--n-max", "48", "--tol", "1e-6", "--format", "csv"});
  CHECK(back.code == 0);
  CHECK(back.out.find("# verdict=converged") != std::string::npos);
  const auto rows = csv_rows(back.out);
  CHECK(rows[0] == std::vector<std::string>{"n", "num", "log2_den", "exact", "decimal"});
  CHECK(rows[1][3] == "1/2");
}

TEST_CASE("series commands") {
  const auto v = run({"variation", "--n-max", "5"}).json();
  CHECK(v["result"]["series"][4]["bound"]["num"] == 32);
  const auto e = run({"example8", "--i-max", "130"});
  REQUIRE(e.code == 0);
  const auto ej = e.json();
  CHECK(ej["result"]["series"][0]["mu"]["exact"] == "9/8");
  CHECK(ej["result"]["series"][0]["provenance"] == "direct");
  CHECK(ej["result"]["series"][129]["provenance"] == "extrapolated");
  CHECK(ej["result"]["series"][129]["mu"]["num"].is_string());
  CHECK(ej["result"]["verdict"]["kind"] == "diverged");
}

TEST_CASE("quadratic command") {
  const auto q = run({"quadratic", "--builtin", "example12", "--check-measure"}).json();
  CHECK(q["result"]["members"] == 110);
  CHECK(q["result"]["quadratic_algebra"]["holds"] == true);
  CHECK(q["result"]["q_measure"]["holds"] == true);
  CHECK(q["result"]["q_measure"]["additivity_gap"]["sum"] == "1/3");
  CHECK(q["result"]["q_measure"]["additivity_gap"]["union"] == "1/2");

  const auto q13 = run({"quadratic", "--builtin", "example13", "--nx", "3", "--ny", "1", "--check-measure"}).json();
  CHECK(q13["result"]["quadratic_algebra"]["holds"] == true);
  CHECK(q13["result"]["q_measure"]["holds"] == true);

  const auto file = temp_file("qwalk_cli_system.txt", "4\n-\n0\n1\n2\n0,1\n0,2\n1,2\n0,1,2,3\n");
  const auto bad = run({"quadratic", "--file", file}).json();
  CHECK(bad["result"]["quadratic_algebra"]["holds"] == false);
  CHECK(bad["result"]["quadratic_algebra"]["counterexample"].size() == 3);
  std::remove(file.c_str());
}

TEST_CASE("integral and eigen commands") {
  const auto i = run({"integral", "--n", "3", "--variable", "changes", "--strategy", "def"}).json();
  CHECK(i["result"]["integral"]["exact"] == "3/1");
  const auto file = temp_file("qwalk_cli_rv.txt", "1\n0\n2\n0\n");
  const auto custom = run({"integral", "--n", "2", "--variable", "custom", "--file", file, "--strategy", "trace"});
  CHECK(custom.code == 0);
  CHECK(custom.json()["result"]["integral"]["exact"] == "1/4");
  std::remove(file.c_str());
  CHECK(run({"integral", "--n", "2", "--variable", "custom"}).code == qwalk::cli::kUsage);

  const auto e = run({"eigen", "--n", "3"}).json();
  CHECK(e["result"]["root2_power"] == -2);
  CHECK(e["result"]["eigen_equation_exact"] == true);
  CHECK(e["result"]["psi0_scaled"].size() == 8);
  CHECK(e["result"]["psi1_scaled"][1] == Json::array({0, 1}));
}

TEST_CASE("meta goes to stderr only") {
  const auto plain = run({"matrix", "--n", "2"});
  const auto meta = run({"matrix", "--n", "2", "--meta"});
  CHECK(plain.out == meta.out);
  CHECK(plain.err.empty());
  const auto info = Json::parse(meta.err);
  CHECK(info["command"] == "matrix");
  CHECK(info.contains("elapsed_seconds"));
}
