#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "cmaj/error.hpp"
#include "cmaj/parallel.hpp"
#include "commands.hpp"

using namespace cmaj::cli;
using json = nlohmann::json;

namespace {

std::string run(int (*cmd)(const Options&, std::ostream&), const Options& o, int* code = nullptr) {
  std::ostringstream out;
  const int rc = cmd(o, out);
  if (code) *code = rc;
  return out.str();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("CSV quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("simulate emits one row per sample") {
  Options o;
  o.model = "rademacher";
  o.n = 6;
  o.samples = 5;
  const auto doc = json::parse(run(cmd_simulate, o));
  CHECK(doc["command"] == "simulate");
  REQUIRE(doc["rows"].size() == 5);
  for (const auto& r : doc["rows"]) {
    CHECK(r["n"] == 6);
    CHECK(r["F"].get<int>() >= 1);
    CHECK(r["H"].get<int>() >= r["F"].get<int>());
  }
  o.format = Format::Csv;
  CHECK(count_lines(run(cmd_simulate, o)) == 6);
}

TEST_CASE("simulate validates its length source") {
  Options o;
  CHECK_THROWS_AS(run(cmd_simulate, o), cmaj::Error);
  o.q = 1.2;
  CHECK_THROWS_AS(run(cmd_simulate, o), cmaj::Error);
  o.n = 3;
  o.q = 0.5;
  CHECK_THROWS_AS(run(cmd_simulate, o), cmaj::Error);
  Options bad;
  bad.n = 3;
  bad.model = "nosuch";
  CHECK_THROWS_AS(run(cmd_simulate, bad), cmaj::Error);
}

TEST_CASE("output depends only on the seed") {
  Options o;
  o.q = 0.7;
  o.samples = 20;
  o.seed = 99;
  const auto a = run(cmd_simulate, o);
  CHECK(a == run(cmd_simulate, o));
  o.seed = 100;
  CHECK(a != run(cmd_simulate, o));
}

TEST_CASE("poisson draws") {
  Options o;
  o.q = 0.5;
  o.samples = 4;
  const auto doc = json::parse(run(cmd_poisson, o));
  CHECK(doc["draws"].size() == 4);
}

TEST_CASE("gf tables") {
  Options o;
  o.model = "rademacher";
  o.order_s = 4;
  o.order_t = 4;
  const auto doc = json::parse(run(cmd_gf, o));
  CHECK(doc["K"][4][2] == "11/24");
  CHECK(doc["H"][2][2] == "3/4");
  CHECK(doc["F"][2][1] == "3/4");
  o.format = Format::Csv;
  CHECK(count_lines(run(cmd_gf, o)) == 1 + 3 * 25);
}

TEST_CASE("transform commands") {
  Options o;
  o.kind = "3214";
  o.increments = "2,-3,1";
  o.u = 2;
  const auto doc = json::parse(run(cmd_transform, o));
  CHECK(doc["result"]["k"] == 2);
  CHECK(doc["result"]["output"] == json::array({"1", "-3", "2"}));

  o.kind = "theorem1";
  o.increments = "1/2,-3/4,1/8,2";
  const auto t = json::parse(run(cmd_transform, o));
  CHECK(t["result"]["output"].size() == 4);

  o.kind = "other";
  CHECK_THROWS_AS(run(cmd_transform, o), cmaj::Error);
}

TEST_CASE("verify report is identical across thread counts") {
  Options o;
  o.suite = "poisson-assembly";
  o.seed = 1;
  int rc = -1;
  cmaj::set_worker_count(1);
  const auto one = run(cmd_verify, o, &rc);
  CHECK(rc == 0);
  cmaj::set_worker_count(2);
  const auto two = run(cmd_verify, o);
  cmaj::set_worker_count(1);
  CHECK(one == two);
  const auto doc = json::parse(one);
  CHECK(doc["pass"] == true);
  CHECK_FALSE(doc.contains("wall_time_seconds"));
  REQUIRE(doc["criteria"].size() == 1);
  CHECK(doc["criteria"][0]["name"] == "poisson-assembly");
  CHECK(doc["criteria"][0]["checks"].size() >= 1);

  o.timing = true;
  CHECK(json::parse(run(cmd_verify, o)).contains("wall_time_seconds"));
  o.suite = "nope";
  CHECK_THROWS_AS(run(cmd_verify, o), cmaj::Error);
}

TEST_CASE("stable-index experiment") {
  Options o;
  o.alphas = "2";
  o.samples = 20000;
  const auto csv = run(cmd_experiment, o);
  CHECK(count_lines(csv) == 2);
  o.alphas = "";
  CHECK(count_lines(run(cmd_experiment, o)) == 1);
}
