#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "qchow/report.hpp"
#include "qchow/verify.hpp"

namespace {

struct CapturedRun {
  int code;
  std::string out;
};

CapturedRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream captured;
  std::streambuf* old_out = std::cout.rdbuf(captured.rdbuf());
  std::ostringstream err;
  std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
  int code = qchow::cli::run(args);
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, captured.str()};
}

}  // namespace

TEST_CASE("exit codes follow the contract") {
  CHECK(run_cli({"--n", "5", "eval", "deg(l_0 x l_0)"}).code == 0);
  CHECK(run_cli({"--n", "5", "eval", "h^1 . h^2", "--expect", "h^3"}).code == 1);
  CHECK(run_cli({"--n", "5", "eval", "rho(("}).code == 2);
  CHECK(run_cli({"--n", "5", "eval", "l_9"}).code == 2);
  CHECK(run_cli({"eval", "1"}).code == 2);  // missing --n
  CHECK(run_cli({"--n", "5", "edi", "--aniso", "--seed", "1:3"}).code == 3);
  CHECK(run_cli({"--n", "15", "eval", "1"}).code == 2);  // above --max-n
  CHECK(run_cli({"--n", "15", "edi", "--mode", "enumerate"}).code == 2);
  CHECK(run_cli({"--n", "4", "verify", "--n-min", "4", "--suite", "ring-grading"}).code == 0);
}

TEST_CASE("eval output and expectations") {
  CapturedRun r = run_cli({"--n", "5", "eval", "rho(2,1,1)"});
  CHECK(r.code == 0);
  CHECK(r.out == "h^2 x l_1 + l_0 x h^1\n");

  CapturedRun json = run_cli({"--n", "5", "--json", "eval", "rho(2,1,1)"});
  auto parsed = nlohmann::json::parse(json.out);
  CHECK(parsed["n"] == 5);
  CHECK(parsed["checks"][0]["name"] == "eval");
  CHECK(parsed["checks"][0]["params"]["value"] == "h^2 x l_1 + l_0 x h^1");
  CHECK(parsed["checks"][0]["pass"] == true);
  CHECK(parsed["checks"][0]["witness"].is_null());
  CHECK(parsed["tables"].is_array());
}

TEST_CASE("edi propagation output") {
  CapturedRun r = run_cli({"--n", "9", "--json", "--trace", "edi", "--aniso", "--seed", "4:1"});
  CHECK(r.code == 0);
  auto parsed = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& table : parsed["tables"]) {
    if (table["level"] == 4) {
      auto members = table["members"].get<std::vector<int>>();
      found = std::find(members.begin(), members.end(), 5) != members.end();
    }
  }
  CHECK(found);
  // the trace carries at least one rule firing entry
  bool has_firing = false;
  for (const auto& check : parsed["checks"]) {
    if (check["name"] == "firing") has_firing = true;
  }
  CHECK(has_firing);
}

TEST_CASE("edi enumeration output") {
  CapturedRun r = run_cli({"--n", "6", "--json", "edi", "--mode", "enumerate", "--limit", "2"});
  CHECK(r.code == 0);
  auto parsed = nlohmann::json::parse(r.out);
  CHECK(parsed["checks"][0]["name"] == "enumerate");
  CHECK(parsed["checks"][0]["params"]["count"] == 192);
  CHECK(parsed["checks"][0]["params"]["emitted"] == 2);
  // two tables, each contributing levels 0..3
  CHECK(parsed["tables"].size() == 8);
}

TEST_CASE("report JSON round-trips losslessly") {
  qchow::VerifyOptions opts;
  opts.n_min = 4;
  opts.n_max = 5;
  opts.filter = "ring";
  qchow::Report report = qchow::run_verify(opts);
  std::string once = qchow::report_to_json(report);
  qchow::Report reparsed = qchow::report_from_json(once);
  CHECK(qchow::report_to_json(reparsed) == once);
  CHECK(reparsed.all_pass() == report.all_pass());
  CHECK(reparsed.checks.size() == report.checks.size());
}

TEST_CASE("verify subcommand emits schema-shaped JSON") {
  CapturedRun r = run_cli({"--n", "5", "--json", "verify", "--n-min", "5", "--suite",
                           "grassmann-degree-pairing"});
  CHECK(r.code == 0);
  auto parsed = nlohmann::json::parse(r.out);
  REQUIRE(parsed.contains("conventions"));
  CHECK(parsed["conventions"]["orientation"] == "ld");
  REQUIRE(parsed["checks"].size() == 1);
  CHECK(parsed["checks"][0]["name"] == "grassmann-degree-pairing");
  CHECK(parsed["checks"][0]["pass"] == true);
}
