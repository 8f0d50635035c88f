#include "ageorder/orders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ageorder/kernels.hpp"

namespace ageorder {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string describe(double a, double b, const SignPattern& p) {
  std::string s = "a=" + fmt(a) + " b=" + fmt(b) + " pattern '" + p.str() + "'";
  s += p.certified ? " (certified)" : " (uncertain)";
  return s;
}

// Smallest witness magnitude over the regions; the safety margin of a witness.
double margin(const SignPattern& p) {
  double m = std::numeric_limits<double>::infinity();
  for (const SignRegion& r : p.regions) m = std::min(m, std::fabs(r.value));
  return p.regions.empty() ? 0.0 : m;
}

void require_two(const HazardVector& lambda, const HazardVector& theta, const char* who) {
  if (lambda.size() != 2 || theta.size() != 2) {
    throw std::invalid_argument(std::string(who) + ": two-component systems only; use star_check_n");
  }
}

std::vector<double> b_grid(const HazardVector& lambda, int points) {
  std::vector<double> b{0.0};
  for (double v : detail::log_grid(1e-4, 1.0, points)) b.push_back(v / lambda.front());
  return b;
}

struct Scan {
  std::optional<Witness> witness;
  bool any_uncertain = false;
  int evaluated = 0;
};

// Best certified violation of `ok` over the a grid at fixed b.
template <typename Criterion>
void scan_row(const HazardVector& lambda, const HazardVector& theta, double b,
              const std::vector<double>& a_values, const ScanOptions& opts, Criterion ok, Scan& out) {
  const auto patterns = kernels::patterns_over_a(lambda, theta, b, a_values, opts);
  out.evaluated += static_cast<int>(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const SignPattern& p = patterns[i];
    if (!p.certified) {
      out.any_uncertain = true;
      continue;
    }
    if (ok(p)) continue;
    if (!out.witness || margin(p) > margin(out.witness->pattern)) {
      out.witness = Witness{a_values[i], b, p};
    }
  }
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "HOLDS";
    case Status::Fails: return "FAILS";
    default: return "INCONCLUSIVE";
  }
}

std::string to_string(Region r) {
  switch (r) {
    case Region::Favorable1: return "FAV1";
    case Region::Favorable2: return "FAV2";
    case Region::Favorable3: return "FAV3";
    default: return "VIOLATING_STRIP";
  }
}

bool star_pattern_ok(const SignPattern& p) {
  const std::string s = p.str();
  return s.empty() || s == "+" || s == "-" || s == "-,+";
}

bool convex_pattern_ok(const SignPattern& p) {
  if (p.size() <= 2) return true;
  return p.str() == "+,-,+";
}

std::vector<double> star_a_grid(const HazardVector& lambda, const HazardVector& theta, int points) {
  const double lo = theta.front() / (2 * lambda.back());
  std::vector<double> a = detail::log_grid(lo, std::max(2.0, 2 * lo), points);
  a.push_back(theta.front() / lambda.back());
  a.push_back(theta.front() / lambda.front());
  a.push_back(1.0);
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

OrderVerdict star_check(const HazardVector& lambda, const HazardVector& theta, const OrderOptions& opts) {
  require_two(lambda, theta, "star_check");
  OrderVerdict v;

  if (majorizes(lambda, theta)) {
    // Spot checks of the analytic case split. Each entry: a, allowed patterns.
    const double t1 = theta[0], l1 = lambda[0];
    struct Spot {
      double a;
      std::vector<std::string> allowed;
      const char* label;
    };
    std::vector<Spot> spots{{1.0, {"", "+"}, "a=1: V >= 0"}};
    if (t1 < l1) {
      spots.push_back({t1 / l1, {"", "-"}, "a=theta1/lambda1: V <= 0"});
      spots.push_back({t1 / (2 * l1), {"", "-"}, "a<theta1/lambda1: V <= 0"});
      spots.push_back({(t1 / l1 + 1) / 2, {"", "+", "-,+"}, "theta1<a*lambda1: '+' or '-,+'"});
    }
    bool contradicted = false;
    for (const Spot& s : spots) {
      const SignPattern p = sign_pattern(difference_function(lambda, theta, s.a, 0.0), opts.scan);
      ++v.patterns_evaluated;
      const bool fits = std::find(s.allowed.begin(), s.allowed.end(), p.str()) != s.allowed.end();
      v.evidence.push_back(std::string(s.label) + ": " + describe(s.a, 0.0, p) + (fits ? "" : " MISMATCH"));
      if (!fits && p.certified) contradicted = true;
    }
    if (contradicted) {
      v.status = Status::Inconclusive;
      v.evidence.push_back("certified spot check contradicts the majorization argument");
      return v;
    }
    v.status = Status::Holds;
    v.certificate = certificate::kMajorizedTwoComponent;
    return v;
  }

  v.evidence.push_back("lambda is not majorized by theta; scanning a numerically");
  Scan scan;
  scan_row(lambda, theta, 0.0, star_a_grid(lambda, theta, opts.a_points), opts.scan, star_pattern_ok, scan);
  v.patterns_evaluated = scan.evaluated;
  if (scan.witness) {
    v.status = Status::Fails;
    v.evidence.push_back("violation: " + describe(scan.witness->a, 0.0, scan.witness->pattern));
    v.witness = std::move(scan.witness);
    return v;
  }
  if (scan.any_uncertain) {
    v.evidence.push_back("some patterns on the a grid were not certified");
    v.status = Status::Inconclusive;
    return v;
  }
  v.evidence.push_back("no violation on the a grid");
  v.status = opts.allow_numerical_holds ? Status::Holds : Status::Inconclusive;
  return v;
}

OrderVerdict convex_check(const HazardVector& lambda, const HazardVector& theta, const OrderOptions& opts) {
  require_two(lambda, theta, "convex_check");
  OrderVerdict v;

  if (opts.probe) {
    const auto [a, b] = *opts.probe;
    const SignPattern p = sign_pattern(difference_function(lambda, theta, a, b), opts.scan);
    ++v.patterns_evaluated;
    v.evidence.push_back("probe " + describe(a, b, p));
    if (p.certified && !convex_pattern_ok(p)) {
      v.status = Status::Fails;
      v.witness = Witness{a, b, p};
      return v;
    }
  }

  const OrderVerdict star = star_check(lambda, theta, opts);
  v.patterns_evaluated += star.patterns_evaluated;
  v.evidence.push_back("star order: " + to_string(star.status) +
                       (star.certificate.empty() ? "" : " [" + star.certificate + "]"));
  if (star.status == Status::Fails) {
    v.status = Status::Fails;
    v.certificate = certificate::kStarOrderFails;
    v.witness = star.witness;
    v.evidence.push_back("the convex transform order implies the star order");
    return v;
  }

  const bool majorized = majorizes(lambda, theta);
  if (majorized && star.status == Status::Holds) {
    if (lambda == theta) {
      v.status = Status::Holds;
      v.certificate = certificate::kIdenticalSystems;
      return v;
    }
    if (lambda.homogeneous()) {
      // Star order holds, b >= 0 suffices, and with an empty strip every
      // (a, b) lies in a favorable region. The grid only confirms.
      Scan scan;
      const auto a_values = star_a_grid(lambda, theta, opts.a_points);
      for (double b : b_grid(lambda, opts.b_points)) {
        scan_row(lambda, theta, b, a_values, opts.scan, convex_pattern_ok, scan);
      }
      v.patterns_evaluated += scan.evaluated;
      if (scan.witness) {
        v.status = Status::Inconclusive;
        v.evidence.push_back("grid violation contradicts the empty-strip argument: " +
                             describe(scan.witness->a, scan.witness->b, scan.witness->pattern));
        return v;
      }
      v.evidence.push_back("violating strip is empty; grid over (a, b >= 0) shows no violation");
      v.status = Status::Holds;
      v.certificate = certificate::kEmptyViolatingStrip;
      return v;
    }
    try {
      const CounterexampleReport r = violation_search(lambda, theta, opts);
      v.status = Status::Fails;
      v.witness = Witness{r.a, r.b, r.pattern};
      v.evidence.push_back("violating strip (" + fmt(r.a_low) + ", " + fmt(r.a_high) + "), b0=" + fmt(r.b0_used) +
                           ": " + describe(r.a, r.b, r.pattern));
    } catch (const SearchError& e) {
      v.status = Status::Inconclusive;
      v.suspect_a = Interval{theta[0] / lambda[1], theta[0] / lambda[0]};
      v.evidence.push_back(std::string("search in the violating strip failed: ") + e.what());
    }
    return v;
  }

  Scan scan;
  auto a_values = star_a_grid(lambda, theta, opts.a_points);
  for (double b : b_grid(lambda, opts.b_points)) {
    scan_row(lambda, theta, b, a_values, opts.scan, convex_pattern_ok, scan);
  }
  v.patterns_evaluated += scan.evaluated;
  if (scan.witness) {
    v.status = Status::Fails;
    v.evidence.push_back("violation: " + describe(scan.witness->a, scan.witness->b, scan.witness->pattern));
    v.witness = std::move(scan.witness);
    return v;
  }
  if (star.status == Status::Holds && !scan.any_uncertain && opts.allow_numerical_holds) {
    v.status = Status::Holds;
    v.evidence.push_back("no violation on the (a, b >= 0) grid");
    return v;
  }
  v.status = Status::Inconclusive;
  v.suspect_a = Interval{a_values.front(), a_values.back()};
  v.evidence.push_back(star.status == Status::Holds ? "no violation on the (a, b >= 0) grid"
                                                    : "star order undecided, so b < 0 is not excluded");
  return v;
}

Region region_classify(double a, double b, const HazardVector& lambda, const HazardVector& theta) {
  require_two(lambda, theta, "region_classify");
  if (!(a > 0) || !(b >= 0)) throw std::domain_error("region_classify: need a > 0 and b >= 0");
  if (!majorizes(lambda, theta)) throw std::domain_error("region_classify: lambda is not majorized by theta");
  if (lambda == theta) throw DegenerateError("region_classify: identical systems");
  const double lo = theta[0] / lambda[1];
  const double hi = theta[0] / lambda[0];
  if (a >= 1) return Region::Favorable1;
  if (a >= hi) return Region::Favorable2;
  if (a <= lo) return Region::Favorable3;
  return Region::ViolatingStrip;
}

CounterexampleReport violation_search(const HazardVector& lambda, const HazardVector& theta,
                                      const OrderOptions& opts) {
  require_two(lambda, theta, "violation_search");
  if (!majorizes(lambda, theta)) throw std::domain_error("violation_search: lambda is not majorized by theta");
  if (lambda == theta) throw DegenerateError("violation_search: identical systems");

  CounterexampleReport r;
  r.a_low = theta[0] / lambda[1];
  r.a_high = theta[0] / lambda[0];
  if (!(r.a_low < r.a_high)) throw DegenerateError("violation_search: the violating strip is empty");

  const ExpSum fx = survival(lambda);
  const ExpSum fy = survival(theta);

  // At a = a_high and b = 0 the difference is negative on (0, inf), so the
  // inverse transform at x0 sits strictly above a_high * x0.
  r.x0_seed = 1.0 / (theta[0] + theta[1]);
  const double slack = transform_point(fy, fx, r.x0_seed) - r.a_high * r.x0_seed;
  if (!(slack > 0)) throw SearchError("violation_search: no slack at x0", {});

  bool found = false;
  double b = slack / 2;
  for (int i = 0; i < 40; ++i, b /= 2) {
    r.attempts.emplace_back(r.x0_seed, b);
    const SignPattern p = sign_pattern(difference_function(lambda, theta, r.a_high, b), opts.scan);
    if (p.certified && p.str() == "+,-,+") {
      found = true;
      break;
    }
  }
  if (!found) throw SearchError("violation_search: no b gives '+,-,+' at a = theta1/lambda1", r.attempts);
  r.b0_used = b;
  r.b = b;

  // V increases with a, so below a_high the positive tail turns negative far
  // out while the middle positive bump survives for a while. Scan the gap
  // a_high - a on a log scale, then refine the best margin.
  const double width = r.a_high - r.a_low;
  auto score = [&](const SignPattern& p) {
    const bool hit = p.certified && p.size() >= 4 && p.starts_with(Sign::Positive) && !convex_pattern_ok(p);
    return hit ? margin(p) : 0.0;
  };
  std::vector<double> exponents;
  for (double k = 1; k <= 60; k += 0.25) exponents.push_back(k);
  std::vector<double> a_values;
  for (double k : exponents) a_values.push_back(r.a_high - width * std::exp2(-k));
  const auto patterns = kernels::patterns_over_a(lambda, theta, b, a_values, opts.scan);

  std::size_t best = patterns.size();
  double best_score = 0;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const double s = score(patterns[i]);
    if (s > best_score) best = i, best_score = s;
  }
  if (best == patterns.size()) {
    throw SearchError("violation_search: no a in the strip gives '+,-,+,-'", r.attempts);
  }
  double best_k = exponents[best];
  SignPattern best_pattern = patterns[best];

  // Golden-section on the exponent around the coarse optimum.
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double lo = best_k - 0.25, hi = best_k + 0.25;
  auto eval_k = [&](double k) {
    const double a = r.a_high - width * std::exp2(-k);
    SignPattern p = sign_pattern(difference_function(lambda, theta, a, b), opts.scan);
    const double s = score(p);
    if (s > best_score) best_score = s, best_k = k, best_pattern = std::move(p);
    return s;
  };
  double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
  double fc = eval_k(c), fd = eval_k(d);
  for (int i = 0; i < 24; ++i) {
    if (fc >= fd) {
      hi = d, d = c, fd = fc;
      c = hi - phi * (hi - lo), fc = eval_k(c);
    } else {
      lo = c, c = d, fc = fd;
      d = lo + phi * (hi - lo), fd = eval_k(d);
    }
  }

  r.a = r.a_high - width * std::exp2(-best_k);
  r.pattern = std::move(best_pattern);
  r.window = {r.a * r.pattern.boundaries.front() + r.b, r.a * r.pattern.boundaries.back() + r.b};
  return r;
}

double dVda(const HazardVector& lambda, double x, double a, double b) {
  if (!(x >= 0)) throw std::domain_error("dVda: x must be nonnegative");
  if (!(a > 0) || !(b >= 0)) throw std::domain_error("dVda: need a > 0 and b >= 0");
  return x * eval(density(lambda), a * x + b);
}

std::vector<std::int8_t> SignMap::row(std::size_t ai) const {
  const auto first = signs.begin() + static_cast<std::ptrdiff_t>(ai * x_values.size());
  return {first, first + static_cast<std::ptrdiff_t>(x_values.size())};
}

SignMap sign_map(const HazardVector& lambda, const HazardVector& theta, double b, Interval a_range,
                 Interval x_range, int a_resolution, int x_resolution, double sign_floor) {
  if (a_resolution < 2 || x_resolution < 2) throw std::invalid_argument("sign_map: resolution must be >= 2x2");
  if (!(a_range.lo > 0) || !(a_range.lo < a_range.hi)) throw std::invalid_argument("sign_map: bad a range");
  if (!(x_range.lo >= 0) || !(x_range.lo < x_range.hi)) throw std::invalid_argument("sign_map: bad x range");
  if (!(b >= 0)) throw std::invalid_argument("sign_map: b must be nonnegative");

  SignMap m;
  for (int i = 0; i < a_resolution; ++i) {
    m.a_values.push_back(a_range.lo + (a_range.hi - a_range.lo) * i / (a_resolution - 1));
  }
  m.a_values.back() = a_range.hi;
  for (double edge : {theta.front() / lambda.back(), theta.front() / lambda.front()}) {
    if (edge >= a_range.lo && edge <= a_range.hi) m.a_values.push_back(edge);
  }
  std::sort(m.a_values.begin(), m.a_values.end());
  m.a_values.erase(std::unique(m.a_values.begin(), m.a_values.end()), m.a_values.end());
  for (int j = 0; j < x_resolution; ++j) {
    m.x_values.push_back(x_range.lo + (x_range.hi - x_range.lo) * j / (x_resolution - 1));
  }
  m.x_values.back() = x_range.hi;
  m.signs = kernels::sign_cells(lambda, theta, b, m.a_values, m.x_values, sign_floor);
  return m;
}

std::string compress_signs(const std::vector<std::int8_t>& cells) {
  std::string s;
  std::int8_t last = 0;
  for (std::int8_t c : cells) {
    if (c == 0 || c == last) continue;
    if (!s.empty()) s += ',';
    s += c > 0 ? '+' : '-';
    last = c;
  }
  return s;
}

OrderVerdict star_check_n(const HazardVector& lambda, const HazardVector& theta, const OrderOptions& opts) {
  if (lambda.size() != theta.size()) throw std::invalid_argument("star_check_n: systems differ in size");
  if (lambda.size() < 2) throw std::invalid_argument("star_check_n: need n >= 2");
  if (lambda.size() > kMaxComponents) throw std::length_error("star_check_n: more than 20 components");

  OrderVerdict v;
  if (!majorizes(lambda, theta)) {
    v.evidence.push_back("precondition: lambda is not majorized by theta; scanned anyway");
  }
  Scan scan;
  scan_row(lambda, theta, 0.0, star_a_grid(lambda, theta, opts.a_points), opts.scan, star_pattern_ok, scan);
  v.patterns_evaluated = scan.evaluated;
  if (scan.witness) {
    v.status = Status::Fails;
    v.evidence.push_back("violation: " + describe(scan.witness->a, 0.0, scan.witness->pattern));
    v.witness = std::move(scan.witness);
    return v;
  }
  v.status = Status::Inconclusive;
  v.evidence.push_back(scan.any_uncertain ? "no certified violation; some patterns uncertain"
                                          : "consistent with star order: no violating pattern on the a grid");
  return v;
}

}  // namespace ageorder
