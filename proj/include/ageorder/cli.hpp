#pragma once

// Command-line front end: check-star, check-convex, find-counterexample,
// sign-map, failure-rate, simulate.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace ageorder::cli {

enum ExitCode : int {
  kHolds = 0,
  kFails = 1,
  kInconclusive = 2,
  kError = 3,
  kIoError = 4,
  kUsage = 64,
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::vector<double> lambda;
  std::vector<double> theta;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> a_min;
  std::optional<double> a_max;
  std::optional<double> x_max;
  std::optional<double> x;
  int a_resolution = 101;
  int x_resolution = 401;
  double sign_floor = 1e-18;
  std::uint64_t seed = 20190101;
  std::size_t samples = 1000000;
  std::string format = "json";
  std::string out;
  bool allow_numerical_holds = false;
  bool timing = false;
};

const std::vector<std::string>& commands();

/// Throws ConfigError on an unknown command, empty or nonpositive rates, or
/// an unknown format.
void validate(const RunConfig& c);

RunConfig from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

/// "N" or "NxM" into (a rows, x columns).
std::pair<int, int> parse_resolution(const std::string& s);

/// Parses argv (and an optional --config file). Throws ConfigError.
/// Returns std::nullopt when help was printed.
std::optional<RunConfig> parse_args(int argc, char** argv, std::ostream& out);

/// Runs one command, writing the report to c.out or to `out`.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

/// parse_args + TOL_OVERRIDE + run; maps malformed input to exit 64.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ageorder::cli
