// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ageorder/cli.hpp"
#include "ageorder/oracle.hpp"
#include "ageorder/orders.hpp"

using namespace ageorder;

namespace {

const HazardVector kLambda{2, 3};
const HazardVector kTheta{1.5, 3.5};

struct Outcome {
  bool pass;
  std::string detail;
};

// Majorized two-component pair sampled around a common sum.
std::pair<HazardVector, HazardVector> majorized_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sum(1.0, 10.0), share(0.05, 0.5), spread(0.01, 0.95);
  const double s = sum(rng);
  const double l1 = s * share(rng);
  const double t1 = l1 * (1.0 - spread(rng));
  return {HazardVector{l1, s - l1}, HazardVector{t1, s - t1}};
}

// Survival of a parallel system in product form, long double.
long double product_survival(const HazardVector& h, long double x) {
  long double p = 1;
  for (double r : h.rates()) p *= -std::expm1(-static_cast<long double>(r) * x);
  return 1 - p;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome counterexample(CounterexampleReport& out) {
  std::ostringstream sink, err;
  cli::RunConfig c;
  c.command = "find-counterexample";
  c.lambda = {2, 3};
  c.theta = {1.5, 3.5};
  const int code = cli::run(c, sink, err);
  if (code != cli::kFails) return {false, "find-counterexample exit " + std::to_string(code)};

  out = violation_search(kLambda, kTheta);
  bool ok = out.a > 0.5 && out.a < 0.75 && out.b > 0 && out.pattern.str() == "+,-,+,-" && out.pattern.certified;
  const ExpSum sy = survival(kTheta), sx = survival(kLambda);
  for (const auto& r : out.pattern.regions) {
    const long double v = product_survival(kTheta, r.x) - product_survival(kLambda, out.a * r.x + out.b);
    ok = ok && std::fabs(static_cast<double>(v)) > 1e-18 && (v > 0) == (r.sign == Sign::Positive);
  }

  OrderOptions o;
  o.probe = std::pair{0.749, 0.0125};
  const OrderVerdict probe = convex_check(kLambda, kTheta, o);
  const bool probe_ok = probe.status == Status::Fails && probe.witness && probe.witness->a == 0.749 &&
                        probe.witness->pattern.str() == "+,-,+,-" && probe.witness->pattern.certified;
  return {ok && probe_ok, fmt("a=%.6f b=%.6f", out.a, out.b) + " pattern " + out.pattern.str() +
                              ", probe (0.749, 0.0125) " + (probe.witness ? probe.witness->pattern.str() : "none")};
}

Outcome star_under_majorization() {
  std::mt19937_64 rng(20190101);
  int holds = 0, clean = 0;
  for (int k = 0; k < 100; ++k) {
    const auto [l, t] = majorized_pair(rng);
    if (star_check(l, t).status == Status::Holds) ++holds;
    const double x_hi = inverse_survival(survival(l), 1e-10);
    const auto grid = oracle::uniform_grid(x_hi * 1e-4, x_hi, 10000);
    if (oracle::star_ratio_oracle(l, t, grid).monotone_violations.empty()) ++clean;
  }
  return {holds == 100 && clean == 100, std::to_string(holds) + "/100 HOLDS, " + std::to_string(clean) + "/100 clean"};
}

Outcome homogeneous() {
  const HazardVector l{2.5, 2.5};
  const auto grid = oracle::uniform_grid(0.0, 5.0 / kTheta.front(), 100000);
  const auto r = oracle::convexity_oracle(l, kTheta, grid);
  const OrderVerdict v = convex_check(l, kTheta);
  return {r.convexity_violations.empty() && v.status != Status::Fails,
          std::to_string(r.convexity_violations.size()) + " concave points, convex_check " + to_string(v.status)};
}

Outcome concave_interval(const CounterexampleReport& ce) {
  const auto h = oracle::concavity_hunt(kLambda, kTheta, ce.window);
  double worst = 0;
  for (const auto& v : h.zoomed.convexity_violations) worst = std::min(worst, -v.magnitude);
  return {!h.zoomed.convexity_violations.empty(),
          std::to_string(h.zoomed.convexity_violations.size()) + " concave points in " +
              fmt("[%.4g, %.4g], strongest second difference %.3g", ce.window.lo, ce.window.hi, worst)};
}

Outcome zero_bound() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_real_distribution<double> rate(0.0, 6.0), coef(-3.0, 3.0);
  int violations = 0, inconclusive = 0, attained = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<Term> t(count(rng));
    for (auto& term : t) term = {rate(rng), coef(rng)};
    const ExpSum f = canonicalize(t);
    if (f.empty()) continue;
    try {
      const RootScan r = count_roots(f, -kInf, kInf);
      if (r.count > sign_change_bound(f)) ++violations;
      if (r.bound_attained) ++attained;
    } catch (const InconclusiveError&) {
      ++inconclusive;
    } catch (const std::logic_error&) {
      ++violations;
    }
  }
  return {violations == 0 && inconclusive == 0,
          std::to_string(violations) + " violations, " + std::to_string(inconclusive) + " inconclusive, bound attained " +
              std::to_string(attained) + " times"};
}

Outcome derivative_identity() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> rate(0.5, 3.0), x(0.1, 2.0), a(0.25, 1.5), b(0.0, 0.5);
  double worst = 0;
  int nonpositive = 0;
  const double h = 1e-6;
  for (int k = 0; k < 1000; ++k) {
    const HazardVector l{rate(rng), rate(rng)};
    const double xv = x(rng), av = a(rng), bv = b(rng);
    // V(a) = Fbar_Y(x) - Fbar_X(a x + b); only the second term depends on a.
    const long double fd =
        -(product_survival(l, (av + h) * xv + bv) - product_survival(l, (av - h) * xv + bv)) / (2 * h);
    const double d = dVda(l, xv, av, bv);
    if (!(d > 0)) ++nonpositive;
    worst = std::max(worst, std::fabs(d - static_cast<double>(fd)) / std::fabs(static_cast<double>(fd)));
  }
  return {worst <= 1e-6 && nonpositive == 0,
          fmt("max rel err %.3g, ", worst) + std::to_string(nonpositive) + " nonpositive"};
}

Outcome survival_mc() {
  const auto r2 = oracle::mc_survival(HazardVector{2, 3}, 1000000, 20190101);
  const auto r3 = oracle::mc_survival(HazardVector{1, 2, 3}, 1000000, 20190101);
  return {r2.sup_distance < 0.005 && r3.sup_distance < 0.005,
          fmt("sup (2,3) %.5f, sup (1,2,3) %.5f", r2.sup_distance, r3.sup_distance)};
}

Outcome quantile_round_trip() {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_real_distribution<double> rate(0.1, 5.0), u(0.0, 1.0);
  double worst = 0;
  for (int s = 0; s < 20; ++s) {
    std::vector<double> r(count(rng));
    for (auto& v : r) v = rate(rng);
    const ExpSum f = survival(HazardVector(r));
    for (int k = 0; k < 100; ++k) {
      double uv = u(rng);
      if (uv == 0) uv = 0.5;
      worst = std::max(worst, std::fabs(eval(f, inverse_survival(f, uv)) - uv));
    }
  }
  return {worst <= 1e-12, fmt("max |eval - u| %.3g", worst)};
}

Outcome scale_invariance() {
  std::mt19937_64 rng(4242);
  int mismatches = 0;
  for (int k = 0; k < 20; ++k) {
    const auto [l, t] = majorized_pair(rng);
    const Status base = star_check(l, t).status;
    for (double f : {0.5, 2.0, 10.0}) {
      if (star_check(l.scaled(f), t.scaled(f)).status != base) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " status mismatches over 60 scalings"};
}

Outcome open_problem() {
  const OrderVerdict v = star_check_n(HazardVector{2, 3, 4}, HazardVector{1, 3, 5});
  return {v.status == Status::Inconclusive && !v.witness,
          to_string(v.status) + ", " + std::to_string(v.patterns_evaluated) + " patterns scanned"};
}

}  // namespace

int main() {
  CounterexampleReport ce;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"counterexample reproduction", [&] { return counterexample(ce); }},
      {"star order under majorization", star_under_majorization},
      {"homogeneous vs heterogeneous", homogeneous},
      {"concave interval detection", [&] { return concave_interval(ce); }},
      {"zero bound", zero_bound},
      {"derivative identity", derivative_identity},
      {"survival correctness", survival_mc},
      {"quantile round trip", quantile_round_trip},
      {"scale invariance", scale_invariance},
      {"open problem mode n=3", open_problem},
  };
  const std::vector<double> limits{60, 120, 0, 0, 0, 0, 0, 0, 0, 0};

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limits[i] > 0 && secs >= limits[i]) {
      o.pass = false;
      o.detail += fmt(" (over the %.0f s limit)", limits[i]);
    }
    if (!o.pass) ++failed;
    std::printf("%s  AC%zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
