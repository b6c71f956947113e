#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "app.hpp"

using paucity::app::run;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json invoke_json(const std::vector<std::string>& args, int expect = 0) {
  auto r = invoke(args);
  REQUIRE(r.code == expect);
  return json::parse(r.out);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (quoted) {
        if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (ch == '"') {
          quoted = false;
        } else {
          cell += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += ch;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("schema root") {
  auto j = invoke_json({"analyze", "--poly", "0,1,1"});
  CHECK(j.contains("tool_version"));
  CHECK(j.contains("config_echo"));
  CHECK(j["rows"].is_array());
  CHECK(j["assertions"]["passed"].is_number());
  CHECK(j["assertions"]["failed"].is_array());
}

TEST_CASE("analyze") {
  auto a = invoke_json({"analyze", "--poly", "0,1,1"})["rows"][0];
  CHECK(a["eligible"] == true);
  CHECK(a["e_p"] == 1);
  CHECK(a["disc_q"] == 1);
  CHECK(invoke_json({"analyze", "--poly", "0,0,1,1"})["rows"][0]["e_p"] == 2);
  auto b = invoke_json({"analyze", "--poly", "9,-12,4"})["rows"][0];
  CHECK(b["eligible"] == false);
  CHECK(b["shift"].is_null());
}

TEST_CASE("exit codes for bad input") {
  CHECK(invoke({"analyze", "--poly", "x+"}).code == 2);
  CHECK(invoke({"analyze"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"analyze", "--poly", "5"}).code == 2);
  CHECK(invoke({"count", "--poly", "0,1,1", "--N-grid", "20,10"}).code == 2);
  CHECK(invoke({"count", "--poly", "0,1,1", "--N", "10", "--N-grid", "10,20"}).code == 2);
  CHECK(invoke({"count", "--poly", "0,1,1", "--k", "0"}).code == 2);
  CHECK(invoke({"count", "--poly", "9,-12,4", "--N", "10"}).code == 2);
  CHECK(invoke({"count", "--poly", "0,1,1", "--format", "xml"}).code == 2);
  CHECK(invoke({"rmf", "--poly", "0,1,1", "--trials", "99"}).code == 2);
  CHECK(invoke({"bounds", "--poly", "0,1,1", "--C", "0"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("count") {
  auto j = invoke_json({"count", "--poly", "x(x+1)", "--N-grid", "10"});
  const auto& row = j["rows"][0];
  CHECK(row["A"] == 202);
  CHECK(row["trivial"] == 190);
  CHECK(row["nontrivial"] == 12);
  CHECK(row["A_over_Nk"].get<double>() == 2.02);
  CHECK(j["config_echo"]["N_grid"] == json::array({10}));
  CHECK_FALSE(j["config_echo"].contains("threads"));

  auto k1 = invoke_json({"count", "--poly", "x(x+1)", "--N-grid", "5,10,20", "--k", "1"});
  for (const auto& r : k1["rows"]) {
    CHECK(r["nontrivial"] == 0);
    CHECK(r["A_over_Nk"].get<double>() == 1.0);
  }
}

TEST_CASE("count ratio decreases over a doubling grid") {
  auto j = invoke_json({"count", "--poly", "x(x+1)", "--N-grid", "100,200,400,800"});
  double prev = 1e9;
  for (const auto& r : j["rows"]) {
    const double ratio = r["nontrivial_over_Nk"].get<double>();
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(j["summary"]["fits"][0]["slope_nontrivial"].get<double>() < 2.0);
}

TEST_CASE("count normalizes before counting") {
  auto j = invoke_json({"count", "--poly", "x^2-2x", "--N", "10"});
  CHECK(j["config_echo"]["shift"] == 2);
  CHECK(j["config_echo"]["poly_used"] == "x^2 + 2x");
}

TEST_CASE("count brute tally") {
  auto j = invoke_json({"count", "--poly", "x(x+1)", "--N", "10", "--brute"});
  CHECK(j["rows"][0]["R"] == 0);
  CHECK(j["rows"][0]["N_prime"] == 3);
  CHECK(j["assertions"]["failed"].empty());
}

TEST_CASE("resource exhaustion flushes partial rows") {
  auto r = invoke({"count", "--poly", "x(x+1)", "--N", "2", "--k", "2,64"});
  CHECK(r.code == 3);
  auto j = json::parse(r.out);
  CHECK(j["rows"].size() == 1);
  CHECK(j.contains("error"));
}

TEST_CASE("bounds") {
  auto j = invoke_json({"bounds", "--poly", "x(x+1)", "--l-max", "300", "--z-max", "200"});
  CHECK(j["assertions"]["failed"].empty());
  const auto& first = j["rows"][0];
  CHECK(first["check"] == "root_count_mod_l");
  CHECK(first["l"] == "1");
  CHECK(first["exact"] == 1);
  CHECK(first["bound_exact"] == "1");
  bool saw_advisory = false;
  for (const auto& r : j["rows"])
    if (r["advisory"] == true) {
      saw_advisory = true;
      CHECK(r["C"] == "1");
    }
  CHECK(saw_advisory);
  CHECK(j["assertions"]["passed"] == 300 + 2 * 200);
}

TEST_CASE("curves") {
  auto j = invoke_json({"curves", "--poly", "x(x+1)", "--N", "10", "--lambda", "3"});
  CHECK(j["rows"].size() == 3);
  CHECK(j["rows"][0]["a"] == 1);
  CHECK(j["rows"][0]["b"] == 2);
  CHECK(j["rows"][0]["points"] == 1);
  CHECK(j["summary"]["aggregate"] == 4);
  CHECK(j["assertions"]["failed"].empty());
  auto csv = invoke({"curves", "--poly", "x(x+1)", "--N", "10", "--lambda", "3", "--format", "csv"});
  CHECK(csv.out.rfind("a,b,N,points", 0) == 0);
}

TEST_CASE("rmf") {
  auto j = invoke_json({"rmf", "--poly", "x(x+1)", "--N", "10", "--trials", "2000", "--mixed", "1:2,2:1"});
  const auto& rows = j["rows"];
  CHECK(rows[0]["target"].get<double>() == 1.0);
  CHECK(rows[1]["exact"] == 202);
  CHECK(rows[3]["kind"] == "mixed");
  CHECK(rows[3]["exact"] == 4);
  CHECK(rows[4]["exact"] == 4);
  CHECK(j["config_echo"]["seed"] == 1);
}

TEST_CASE("json output is identical across thread counts") {
  for (const std::vector<std::string>& base :
       {std::vector<std::string>{"count", "--poly", "x(x+1)", "--N-grid", "50,100", "--k", "2,3"},
        std::vector<std::string>{"rmf", "--poly", "x(x+1)", "--N", "60", "--trials", "500"}}) {
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    CHECK(invoke(one).out == invoke(four).out);
  }
}

TEST_CASE("csv and json carry the same numbers") {
  const std::vector<std::string> base{"count", "--poly", "x(x+1)", "--N-grid", "10,37,100"};
  auto j = invoke_json(base);
  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  auto table = parse_csv(invoke(csv_args).out);
  REQUIRE(table.size() == j["rows"].size() + 1);
  CHECK(table[0][0] == "poly");
  CHECK(table[0][5] == "nontrivial");
  for (std::size_t i = 0; i < j["rows"].size(); ++i) {
    REQUIRE(table[i + 1].size() == table[0].size());
    for (std::size_t col = 0; col < table[0].size(); ++col) {
      const std::string& key = table[0][col];
      CAPTURE(key);
      REQUIRE(j["rows"][i].contains(key));
      const json& value = j["rows"][i][key];
      const std::string expect = value.is_null() ? "" : value.is_string() ? value.get<std::string>() : value.dump();
      CHECK(table[i + 1][col] == expect);
    }
    CHECK(j["rows"][i].size() == table[0].size());
  }
}

TEST_CASE("--out writes the report to a file") {
  const std::string path = "paucity_cli_test_out.json";
  auto r = invoke({"analyze", "--poly", "0,1,1", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(json::parse(ss.str())["rows"][0]["e_p"] == 1);
  std::remove(path.c_str());
}
