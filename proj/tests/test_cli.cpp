#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ageorder/cli.hpp"

using namespace ageorder::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ageorder");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check-star holds with a certificate") {
  const Result r = invoke({"check-star", "--lambda", "2,3", "--theta", "1.5,3.5"});
  CHECK(r.code == kHolds);
  const json j = json::parse(r.out);
  CHECK(j["verdict"] == "HOLDS");
  CHECK(j["certificate"] == "majorized-two-component");
  CHECK(j.contains("timing"));
  CHECK(j["config_echo"]["lambda"] == json::array({2.0, 3.0}));
}

TEST_CASE("check-convex fails with a witness near the known parameters") {
  const Result r = invoke({"check-convex", "--lambda", "2,3", "--theta", "1.5,3.5"});
  CHECK(r.code == kFails);
  const json j = json::parse(r.out);
  CHECK(j["verdict"] == "FAILS");
  const double a = j["witness"]["a"];
  const double b = j["witness"]["b"];
  CHECK(a == doctest::Approx(0.749).epsilon(0.01));
  CHECK(b == doctest::Approx(0.0125).epsilon(0.5));
  CHECK(j["witness"]["pattern_string"] == "+,-,+,-");
  for (const auto& reg : j["witness"]["pattern"]) {
    CHECK(reg.contains("sign"));
    CHECK(reg.contains("x"));
    CHECK(reg.contains("value"));
  }
}

TEST_CASE("check-convex probe") {
  const Result r = invoke({"check-convex", "--lambda", "2,3", "--theta", "1.5,3.5", "--a", "0.749", "--b", "0.0125"});
  CHECK(r.code == kFails);
  const json j = json::parse(r.out);
  CHECK(j["witness"]["a"] == 0.749);
  CHECK(j["witness"]["pattern_string"] == "+,-,+,-");
}

TEST_CASE("find-counterexample") {
  const Result r = invoke({"find-counterexample", "--lambda", "2,3", "--theta", "1.5,3.5"});
  CHECK(r.code == kFails);
  const json j = json::parse(r.out);
  CHECK(j["counterexample"]["pattern_string"] == "+,-,+,-");
  CHECK(j["counterexample"]["certified"] == true);

  const Result degenerate = invoke({"find-counterexample", "--lambda", "2.5,2.5", "--theta", "1.5,3.5"});
  CHECK(degenerate.code == kError);
  CHECK(degenerate.err.find("empty") != std::string::npos);
}

TEST_CASE("sign-map csv") {
  const Result r = invoke({"sign-map", "--lambda", "2,3", "--theta", "1.5,3.5", "--b", "0.0125", "--resolution",
                           "11x21", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,a,sign\n", 0) == 0);
  std::istringstream rows(r.out);
  std::string line;
  int n = 0;
  while (std::getline(rows, line)) ++n;
  CHECK(n >= 1 + 11 * 21);
}

TEST_CASE("failure-rate and simulate") {
  Result r = invoke({"failure-rate", "--lambda", "2", "--x", "1.5"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["failure_rate"][0].get<double>() == doctest::Approx(2.0));

  r = invoke({"failure-rate", "--lambda", "2,3", "--x", "500"});
  CHECK(r.code == kError);
  CHECK(r.err.find("largest safe x") != std::string::npos);

  r = invoke({"simulate", "--lambda", "2,3", "--samples", "20000", "--seed", "5"});
  CHECK(r.code == 0);
  const Result again = invoke({"simulate", "--lambda", "2,3", "--samples", "20000", "--seed", "5"});
  CHECK(r.out == again.out);
}

TEST_CASE("identical configurations give byte-identical reports") {
  const std::vector<std::string> args{"check-convex", "--lambda", "2,3", "--theta", "1.5,3.5"};
  CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("malformed input exits with 64") {
  CHECK(invoke({"check-star", "--lambda", "2,-3", "--theta", "1,4"}).code == kUsage);
  CHECK(invoke({"check-star", "--lambda", "2,abc", "--theta", "1,4"}).code == kUsage);
  CHECK(invoke({"check-star", "--theta", "1,4"}).code == kUsage);
  CHECK(invoke({"frobnicate", "--lambda", "2,3", "--theta", "1,4"}).code == kUsage);
  CHECK(invoke({"check-star", "--lambda", "2,3", "--theta", "1,4", "--format", "xml"}).code == kUsage);
  CHECK(invoke({"check-star", "--lambda", "2,3", "--theta", "1,4", "--bogus"}).code == kUsage);
  CHECK(invoke({"sign-map", "--lambda", "2,3", "--theta", "1,4", "--resolution", "9y"}).code == kUsage);
  CHECK(invoke({"check-star", "--config", "/nonexistent/config.json"}).code == kUsage);
}

TEST_CASE("parse_resolution") {
  CHECK(parse_resolution("50") == std::pair{50, 50});
  CHECK(parse_resolution("20x300") == std::pair{20, 300});
  CHECK_THROWS_AS(parse_resolution("20x"), ConfigError);
  CHECK_THROWS_AS(parse_resolution("abc"), ConfigError);
}

TEST_CASE("json config round trip and file output") {
  const auto dir = std::filesystem::temp_directory_path() / "ageorder_cli_test";
  std::filesystem::create_directories(dir);
  RunConfig c;
  c.command = "check-star";
  c.lambda = {2, 3};
  c.theta = {1.5, 3.5};
  c.out = (dir / "report.json").string();
  const json j = to_json(c);
  const RunConfig back = from_json(j);
  CHECK(back.lambda == c.lambda);
  CHECK(back.command == c.command);

  const auto cfg = dir / "config.json";
  std::ofstream(cfg) << json{{"command", "check-star"}, {"lambda", {2, 3}}, {"theta", {1.5, 3.5}}}.dump();
  const Result r = invoke({"--config", cfg.string(), "--out", c.out});
  CHECK(r.code == kHolds);
  CHECK(r.out.empty());
  std::ifstream in(c.out);
  CHECK(json::parse(in)["verdict"] == "HOLDS");

  CHECK(invoke({"--config", cfg.string(), "--out", "/nonexistent/dir/r.json"}).code == kIoError);
}

TEST_CASE("TOL_OVERRIDE scales the sign floor") {
  setenv("TOL_OVERRIDE", "100", 1);
  const Result r = invoke({"check-star", "--lambda", "2,3", "--theta", "1.5,3.5"});
  CHECK(json::parse(r.out)["config_echo"]["sign_floor"].get<double>() == doctest::Approx(1e-16));
  setenv("TOL_OVERRIDE", "zero", 1);
  CHECK(invoke({"check-star", "--lambda", "2,3", "--theta", "1.5,3.5"}).code == kUsage);
  unsetenv("TOL_OVERRIDE");
}

TEST_CASE("check-star with three components") {
  const Result r = invoke({"check-star", "--lambda", "2,3,4", "--theta", "1,3,5"});
  CHECK(r.code == kInconclusive);
}
