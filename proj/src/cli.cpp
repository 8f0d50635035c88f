#include "ageorder/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "ageorder/oracle.hpp"
#include "ageorder/orders.hpp"
#include "ageorder/report.hpp"

namespace ageorder::cli {

using nlohmann::json;

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"check-star",   "check-convex", "find-counterexample",
                                              "sign-map",     "failure-rate", "simulate"};
  return names;
}

void validate(const RunConfig& c) {
  const auto& names = commands();
  if (std::find(names.begin(), names.end(), c.command) == names.end()) {
    throw ConfigError("unknown command '" + c.command + "'");
  }
  auto check_rates = [](const std::vector<double>& r, const char* name) {
    if (r.empty()) throw ConfigError(std::string("--") + name + " is required");
    for (double v : r) {
      if (!(v > 0) || !std::isfinite(v)) throw ConfigError(std::string("--") + name + " rates must be positive");
    }
  };
  check_rates(c.lambda, "lambda");
  if (c.command != "failure-rate" && c.command != "simulate") check_rates(c.theta, "theta");
  if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
  if (c.a && !(*c.a > 0)) throw ConfigError("--a must be positive");
  if (c.b && !(*c.b >= 0)) throw ConfigError("--b must be nonnegative");
  if (!(c.sign_floor > 0)) throw ConfigError("--sign-floor must be positive");
  if (c.a_resolution < 2 || c.x_resolution < 2) throw ConfigError("--resolution must be at least 2x2");
  if (c.samples < 1000) throw ConfigError("--samples must be at least 1000");
}

std::pair<int, int> parse_resolution(const std::string& s) {
  auto to_int = [&](const std::string& part) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad --resolution '" + s + "'");
    }
    if (used != part.size()) throw ConfigError("bad --resolution '" + s + "'");
    return v;
  };
  const auto x = s.find('x');
  if (x == std::string::npos) {
    const int n = to_int(s);
    return {n, n};
  }
  return {to_int(s.substr(0, x)), to_int(s.substr(x + 1))};
}

RunConfig from_json(const json& j) {
  RunConfig c;
  try {
    auto opt = [&](const char* key, std::optional<double>& dst) {
      if (j.contains(key) && !j[key].is_null()) dst = j[key].get<double>();
    };
    c.command = j.value("command", "");
    c.lambda = j.value("lambda", std::vector<double>{});
    c.theta = j.value("theta", std::vector<double>{});
    opt("a", c.a);
    opt("b", c.b);
    opt("a_min", c.a_min);
    opt("a_max", c.a_max);
    opt("x_max", c.x_max);
    opt("x", c.x);
    if (j.contains("resolution")) {
      const auto& r = j["resolution"];
      std::tie(c.a_resolution, c.x_resolution) =
          r.is_string() ? parse_resolution(r.get<std::string>()) : std::pair{r.get<int>(), r.get<int>()};
    }
    c.a_resolution = j.value("a_resolution", c.a_resolution);
    c.x_resolution = j.value("x_resolution", c.x_resolution);
    c.sign_floor = j.value("sign_floor", c.sign_floor);
    c.seed = j.value("seed", c.seed);
    c.samples = j.value("samples", c.samples);
    c.format = j.value("format", c.format);
    c.out = j.value("out", c.out);
    c.allow_numerical_holds = j.value("allow_numerical_holds", c.allow_numerical_holds);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

json to_json(const RunConfig& c) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return json{{"command", c.command},
              {"lambda", c.lambda},
              {"theta", c.theta},
              {"a", opt(c.a)},
              {"b", opt(c.b)},
              {"a_min", opt(c.a_min)},
              {"a_max", opt(c.a_max)},
              {"x_max", opt(c.x_max)},
              {"x", opt(c.x)},
              {"a_resolution", c.a_resolution},
              {"x_resolution", c.x_resolution},
              {"sign_floor", c.sign_floor},
              {"seed", c.seed},
              {"samples", c.samples},
              {"format", c.format},
              {"allow_numerical_holds", c.allow_numerical_holds}};
}

std::optional<RunConfig> parse_args(int argc, char** argv, std::ostream& out) {
  CLI::App app{"Transform order checks for parallel systems of exponential components", "ageorder"};
  std::string command, config_path, resolution, lambda_s, theta_s;
  double a = 0, b = 0, a_min = 0, a_max = 0, x_max = 0, x = 0, sign_floor = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string format, out_path;

  app.add_option("command", command, "check-star | check-convex | find-counterexample | sign-map | "
                                     "failure-rate | simulate");
  auto* o_config = app.add_option("--config", config_path, "JSON file mirroring the run configuration");
  auto* o_lambda = app.add_option("--lambda", lambda_s, "comma-separated rates of the X system");
  auto* o_theta = app.add_option("--theta", theta_s, "comma-separated rates of the Y system");
  auto* o_a = app.add_option("--a", a, "scale parameter a");
  auto* o_b = app.add_option("--b", b, "shift parameter b");
  auto* o_amin = app.add_option("--a-min", a_min, "sign map: smallest a");
  auto* o_amax = app.add_option("--a-max", a_max, "sign map: largest a");
  auto* o_xmax = app.add_option("--x-max", x_max, "largest x for sign maps and failure-rate grids");
  auto* o_x = app.add_option("--x", x, "failure-rate: single evaluation point");
  auto* o_res = app.add_option("--resolution", resolution, "grid size N or NxM (a rows x columns)");
  auto* o_floor = app.add_option("--sign-floor", sign_floor, "smallest |V| accepted as a sign witness");
  auto* o_seed = app.add_option("--seed", seed, "Monte Carlo seed");
  auto* o_samples = app.add_option("--samples", samples, "Monte Carlo sample count");
  auto* o_format = app.add_option("--format", format, "json or csv");
  auto* o_out = app.add_option("--out", out_path, "output file (default: stdout)");
  auto* f_holds = app.add_flag("--allow-numerical-holds", "report HOLDS when a grid finds no violation");
  auto* f_timing = app.add_flag("--timing", "add wall-clock time to the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig c;
  if (*o_config) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file " + config_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    c = from_json(j);
  }
  auto rates = [](const std::string& s) {
    std::vector<double> r;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        r.push_back(std::stod(item, &used));
        if (used != item.size()) throw ConfigError("bad rate '" + item + "'");
      } catch (const std::logic_error&) {
        throw ConfigError("bad rate '" + item + "'");
      }
    }
    return r;
  };
  if (!command.empty()) c.command = command;
  if (*o_lambda) c.lambda = rates(lambda_s);
  if (*o_theta) c.theta = rates(theta_s);
  if (*o_a) c.a = a;
  if (*o_b) c.b = b;
  if (*o_amin) c.a_min = a_min;
  if (*o_amax) c.a_max = a_max;
  if (*o_xmax) c.x_max = x_max;
  if (*o_x) c.x = x;
  if (*o_res) std::tie(c.a_resolution, c.x_resolution) = parse_resolution(resolution);
  if (*o_floor) c.sign_floor = sign_floor;
  if (*o_seed) c.seed = seed;
  if (*o_samples) c.samples = samples;
  if (*o_format) c.format = format;
  if (*o_out) c.out = out_path;
  if (*f_holds) c.allow_numerical_holds = true;
  if (*f_timing) c.timing = true;
  return c;
}

namespace {

int exit_code(Status s) {
  switch (s) {
    case Status::Holds: return kHolds;
    case Status::Fails: return kFails;
    default: return kInconclusive;
  }
}

struct Emitter {
  const RunConfig& config;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  json envelope(json body, int patterns) const {
    json timing{{"patterns_evaluated", patterns}};
    if (config.timing) {
      const auto elapsed = std::chrono::steady_clock::now() - start;
      timing["elapsed_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    body["timing"] = timing;
    body["config_echo"] = to_json(config);
    return body;
  }
};

int deliver(const RunConfig& c, const std::string& text, std::ostream& out, std::ostream& err) {
  if (c.out.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f || !(f << text)) {
    err << "error: cannot write " << c.out << '\n';
    return kIoError;
  }
  return 0;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  validate(c);
  const Emitter emit{c};
  OrderOptions opts;
  opts.scan.sign_floor = c.sign_floor;
  opts.allow_numerical_holds = c.allow_numerical_holds;

  std::ostringstream text;
  int code = kHolds;
  try {
    const HazardVector lambda(c.lambda);

    if (c.command == "check-star" || c.command == "check-convex") {
      const HazardVector theta(c.theta);
      OrderVerdict v;
      if (c.command == "check-star") {
        v = lambda.size() == 2 && theta.size() == 2 ? star_check(lambda, theta, opts)
                                                    : star_check_n(lambda, theta, opts);
      } else {
        if (lambda.size() != 2 || theta.size() != 2) {
          err << "error: check-convex supports two-component systems only\n";
          return kError;
        }
        if (c.a && c.b) opts.probe = std::pair{*c.a, *c.b};
        v = convex_check(lambda, theta, opts);
      }
      code = exit_code(v.status);
      if (c.format == "csv") {
        write_csv(text, v);
      } else {
        text << dump(emit.envelope(ageorder::to_json(v), v.patterns_evaluated));
      }
    } else if (c.command == "find-counterexample") {
      const HazardVector theta(c.theta);
      try {
        const CounterexampleReport r = violation_search(lambda, theta, opts);
        OrderVerdict v;
        v.status = Status::Fails;
        v.witness = Witness{r.a, r.b, r.pattern};
        code = kFails;
        if (c.format == "csv") {
          write_csv(text, v);
        } else {
          json body = ageorder::to_json(v);
          body["counterexample"] = ageorder::to_json(r);
          text << dump(emit.envelope(body, 0));
        }
      } catch (const SearchError& e) {
        code = kInconclusive;
        json attempts = json::array();
        for (const auto& [x0, b] : e.attempts()) attempts.push_back({{"x0", x0}, {"b", b}});
        json body{{"verdict", "INCONCLUSIVE"}, {"certificate", nullptr}, {"witness", nullptr},
                  {"error", e.what()}, {"attempts", attempts}};
        text << dump(emit.envelope(body, 0));
      }
    } else if (c.command == "sign-map") {
      const HazardVector theta(c.theta);
      const double lo = c.a_min.value_or(0.9 * theta.front() / lambda.back());
      const double hi = c.a_max.value_or(std::max(1.0, 1.05 * theta.front() / lambda.front()));
      const double xm = c.x_max.value_or(30.0 / theta.front());
      const SignMap m = sign_map(lambda, theta, c.b.value_or(0.0), {lo, hi}, {0.0, xm}, c.a_resolution,
                                 c.x_resolution, c.sign_floor);
      if (c.format == "csv") {
        write_csv(text, m);
      } else {
        text << dump(emit.envelope(ageorder::to_json(m), 0));
      }
    } else if (c.command == "failure-rate") {
      std::vector<double> xs;
      if (c.x) {
        xs.push_back(*c.x);
      } else {
        const double xm = c.x_max.value_or(10.0 / lambda.front());
        for (int i = 1; i <= c.x_resolution; ++i) xs.push_back(xm * i / c.x_resolution);
      }
      std::vector<double> rates;
      for (double x : xs) rates.push_back(failure_rate(lambda, x));
      if (c.format == "csv") {
        text << std::setprecision(17) << "x,rate\n";
        for (std::size_t i = 0; i < xs.size(); ++i) text << xs[i] << ',' << rates[i] << '\n';
      } else {
        text << dump(emit.envelope(json{{"x", xs}, {"failure_rate", rates}}, 0));
      }
    } else if (c.command == "simulate") {
      const oracle::McReport r = oracle::mc_survival(lambda, c.samples, c.seed);
      if (c.format == "csv") {
        write_csv(text, r);
      } else {
        text << dump(emit.envelope(ageorder::to_json(r), 0));
      }
    }
  } catch (const HazardOverflow& e) {
    err << "error: " << e.what() << "; largest safe x = " << std::setprecision(17) << e.largest_safe_x() << '\n';
    return kError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }

  const int io = deliver(c, text.str(), out, err);
  return io ? io : code;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  try {
    const auto parsed = parse_args(argc, argv, out);
    if (!parsed) return kHolds;
    RunConfig c = *parsed;
    if (const char* scale = std::getenv("TOL_OVERRIDE")) {
      char* end = nullptr;
      const double k = std::strtod(scale, &end);
      if (end == scale || *end != '\0' || !(k > 0)) throw ConfigError("TOL_OVERRIDE must be a positive number");
      c.sign_floor *= k;
    }
    validate(c);
    return run(c, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace ageorder::cli
