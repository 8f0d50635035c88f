#include "ageorder/expsum.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <optional>
#include <sstream>

namespace ageorder {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0;
  long double comp_ = 0;
};

constexpr long double kEvalEps = LDBL_EPSILON;

Sign sign_of(long double v) {
  if (v > 0) return Sign::Positive;
  if (v < 0) return Sign::Negative;
  return Sign::Zero;
}

Sign flip(Sign s) { return static_cast<Sign>(-to_int(s)); }

// Derivative of exp(r1 x) f(x): one term fewer than f, rates shifted by -r1.
ExpSum reduced_derivative(const ExpSum& f) {
  std::vector<Term> raw;
  const auto t = f.terms();
  const double r1 = t.front().rate;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double shifted = t[i].rate - r1;
    raw.push_back({shifted, -t[i].coef * shifted});
  }
  return canonicalize(std::move(raw), 0.0);
}

// Smallest T with sum_{i != k} |c_i| exp(-|r_i - r_k| T) <= |c_k| / 2.
double dominance_bound(const ExpSum& f, bool towards_plus_inf) {
  const auto t = f.terms();
  if (t.size() <= 1) return 0.0;
  const Term& dom = towards_plus_inf ? t.front() : t.back();
  const long double target = std::fabs(static_cast<long double>(dom.coef)) / 2;
  auto rest = [&](double T) {
    long double s = 0;
    for (const Term& term : t) {
      if (&term == &dom) continue;
      const long double gap = std::fabs(static_cast<long double>(term.rate) - dom.rate);
      s += std::fabs(static_cast<long double>(term.coef)) * std::exp(-gap * T);
    }
    return s;
  };
  if (rest(0.0) <= target) return 0.0;
  double hi = 1.0;
  while (rest(hi) > target) {
    hi *= 2;
    if (!std::isfinite(hi)) return std::numeric_limits<double>::max();
  }
  double lo = hi / 2;
  if (hi == 1.0) lo = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (rest(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

struct Node {
  double x;
  Sign sign;
  bool critical;
};

}  // namespace

char sign_char(Sign s) {
  switch (s) {
    case Sign::Positive: return '+';
    case Sign::Negative: return '-';
    default: return '0';
  }
}

ExpSum canonicalize(std::vector<Term> raw, double tol) {
  if (!(tol >= 0)) throw std::domain_error("canonicalize: tolerance must be nonnegative");
  for (const Term& t : raw) {
    if (!std::isfinite(t.rate) || t.rate < 0) {
      throw std::domain_error("canonicalize: rates must be finite and nonnegative");
    }
    if (!std::isfinite(t.coef)) throw std::domain_error("canonicalize: non-finite coefficient");
  }
  std::erase_if(raw, [](const Term& t) { return t.coef == 0.0; });
  std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.rate < b.rate; });

  ExpSum out;
  std::size_t i = 0;
  while (i < raw.size()) {
    const double rate = raw[i].rate;
    const double reach = tol * std::max(1.0, rate);
    CompensatedSum sum;
    long double mass = 0;
    std::size_t j = i;
    for (; j < raw.size() && raw[j].rate - rate <= reach; ++j) {
      sum.add(raw[j].coef);
      mass += std::fabs(static_cast<long double>(raw[j].coef));
    }
    const long double c = sum.value();
    if (c != 0 && std::fabs(c) > tol * mass) {
      out.terms_.push_back({rate, static_cast<double>(c)});
    }
    i = j;
  }
  return out;
}

ExpSum operator+(const ExpSum& f, const ExpSum& g) {
  std::vector<Term> raw(f.terms().begin(), f.terms().end());
  raw.insert(raw.end(), g.terms().begin(), g.terms().end());
  return canonicalize(std::move(raw));
}

ExpSum operator-(const ExpSum& f) { return -1.0 * f; }

ExpSum operator-(const ExpSum& f, const ExpSum& g) { return f + (-g); }

ExpSum operator*(double k, const ExpSum& f) {
  std::vector<Term> raw;
  for (const Term& t : f.terms()) raw.push_back({t.rate, k * t.coef});
  return canonicalize(std::move(raw), 0.0);
}

long double ScaledValue::unscaled() const {
  return scaled * std::exp(-static_cast<long double>(ref_rate) * x);
}

ScaledValue evaluate(const ExpSum& f, double x) {
  ScaledValue out;
  const auto t = f.terms();
  out.x = x;
  if (t.empty()) return out;
  out.ref_rate = x >= 0 ? t.front().rate : t.back().rate;
  CompensatedSum sum;
  long double mass = 0;
  for (const Term& term : t) {
    const long double e =
        -(static_cast<long double>(term.rate) - out.ref_rate) * static_cast<long double>(x);
    const long double v = term.coef * std::exp(e);
    sum.add(v);
    mass += std::fabs(v) * (4 + std::fabs(e));
  }
  out.scaled = sum.value();
  out.noise = kEvalEps * mass;
  return out;
}

double eval(const ExpSum& f, double x) { return static_cast<double>(evaluate(f, x).unscaled()); }

double ExpSum::operator()(double x) const { return eval(*this, x); }

Sign reliable_sign(const ExpSum& f, double x) {
  const ScaledValue v = evaluate(f, x);
  if (std::fabs(v.scaled) <= v.noise) return Sign::Zero;
  return sign_of(v.scaled);
}

ExpSum derivative(const ExpSum& f) {
  std::vector<Term> raw;
  for (const Term& t : f.terms()) {
    if (t.rate == 0.0) continue;
    raw.push_back({t.rate, -t.coef * t.rate});
  }
  return canonicalize(std::move(raw), 0.0);
}

ExpSum shift_scale(const ExpSum& f, double a, double b) {
  if (!(a > 0) || !std::isfinite(a)) throw std::domain_error("shift_scale: a must be positive");
  if (!(b >= 0) || !std::isfinite(b)) throw std::domain_error("shift_scale: b must be nonnegative");
  std::vector<Term> raw;
  for (const Term& t : f.terms()) {
    raw.push_back({t.rate * a, static_cast<double>(t.coef * std::exp(-static_cast<long double>(t.rate) * b))});
  }
  return canonicalize(std::move(raw), 0.0);
}

int sign_change_bound(const ExpSum& f) {
  int changes = 0;
  const auto t = f.terms();
  for (std::size_t i = 1; i < t.size(); ++i) {
    if ((t[i].coef > 0) != (t[i - 1].coef > 0)) ++changes;
  }
  return changes;
}

Sign asymptotic_sign(const ExpSum& f) {
  return f.empty() ? Sign::Zero : sign_of(f.terms().front().coef);
}

Sign asymptotic_sign_neg(const ExpSum& f) {
  return f.empty() ? Sign::Zero : sign_of(f.terms().back().coef);
}

long double derivative_at_zero(const ExpSum& f, int k, long double* mass) {
  CompensatedSum sum;
  long double m = 0;
  for (const Term& t : f.terms()) {
    long double v = t.coef;
    for (int i = 0; i < k; ++i) v *= -static_cast<long double>(t.rate);
    sum.add(v);
    m += std::fabs(v);
  }
  if (mass) *mass = m;
  return sum.value();
}

Sign sign_at_zero_plus(const ExpSum& f) {
  for (int k = 0; k <= 3; ++k) {
    long double mass = 0;
    const long double d = derivative_at_zero(f, k, &mass);
    if (std::fabs(d) > 32 * kEvalEps * mass) return sign_of(d);
  }
  return Sign::Zero;
}

double tail_bound(const ExpSum& f) { return dominance_bound(f, true); }

double tail_bound_neg(const ExpSum& f) { return dominance_bound(f, false); }

namespace detail {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (n < 2 || !(lo > 0) || !(hi > lo)) {
    g.push_back(hi);
    return g;
  }
  g.reserve(static_cast<std::size_t>(n));
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g.push_back(lo * std::exp(step * i));
  g.back() = hi;
  return g;
}

Isolation isolate(const ExpSum& f, double lo, double hi, const ScanOptions& opts, Sign left_sign,
                  std::span<const double> extra_nodes) {
  Isolation out;
  if (f.size() <= 1) return out;

  // Between consecutive critical points of exp(r1 x) f(x) the function is
  // monotone, so each such piece holds at most one root.
  const Isolation sub = isolate(reduced_derivative(f), lo, hi, opts);
  out.complete = sub.complete;
  std::vector<double> crits = sub.roots;
  crits.insert(crits.end(), sub.tangential.begin(), sub.tangential.end());
  std::sort(crits.begin(), crits.end());

  std::vector<Node> nodes;
  nodes.reserve(crits.size() + extra_nodes.size() + 2);
  if (std::isfinite(lo)) {
    nodes.push_back({lo, left_sign != Sign::Zero ? left_sign : reliable_sign(f, lo), false});
  } else {
    double left = -tail_bound_neg(f);
    if (!crits.empty()) left = std::min(left, crits.front() - std::max(1.0, std::fabs(crits.front())));
    nodes.push_back({left, asymptotic_sign_neg(f), false});
  }
  for (double c : crits) {
    if (c > lo && c < hi) nodes.push_back({c, reliable_sign(f, c), true});
  }
  for (double e : extra_nodes) {
    if (e > lo && e < hi) nodes.push_back({e, reliable_sign(f, e), false});
  }
  if (std::isfinite(hi)) {
    nodes.push_back({hi, reliable_sign(f, hi), false});
  } else {
    double right = tail_bound(f);
    if (!crits.empty()) right = std::max(right, crits.back() + std::max(1.0, std::fabs(crits.back())));
    if (std::isfinite(lo)) right = std::max(right, lo + std::max(1.0, std::fabs(lo)));
    nodes.push_back({right, asymptotic_sign(f), false});
  }
  std::stable_sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.x < b.x; });

  auto bisect = [&](double a, Sign sa, double b) {
    double root = a + (b - a) / 2;
    Interval bracket{a, b};
    for (int it = 0;; ++it) {
      const double m = a + (b - a) / 2;
      bracket = {a, b};
      root = m;
      if (b - a <= opts.x_tol * std::max(1.0, std::fabs(m)) || m <= a || m >= b) break;
      if (it >= opts.max_refinements) {
        std::vector<Interval> partial = out.brackets;
        partial.push_back(bracket);
        throw InconclusiveError("root refinement did not converge", std::move(partial));
      }
      const Sign sm = reliable_sign(f, m);
      if (sm == Sign::Zero) break;
      (sm == sa ? a : b) = m;
    }
    out.brackets.push_back(bracket);
    out.roots.push_back(root);
  };

  std::optional<Node> last;
  std::vector<double> pending;
  for (const Node& node : nodes) {
    if (node.sign == Sign::Zero) {
      if (node.critical && last) pending.push_back(node.x);
      continue;
    }
    if (last) {
      if (node.sign != last->sign) {
        bisect(last->x, last->sign, node.x);
      } else if (!pending.empty()) {
        out.tangential.push_back(pending[pending.size() / 2]);
        out.complete = false;
      }
    }
    pending.clear();
    last = node;
  }
  return out;
}

}  // namespace detail

RootScan count_roots(const ExpSum& f, double lo, double hi, const ScanOptions& opts) {
  if (!(lo < hi)) throw std::invalid_argument("count_roots: need lo < hi");
  if (f.empty()) throw std::invalid_argument("count_roots: zero function has no isolated roots");

  const double a = std::isfinite(lo) ? lo : -std::max(1.0, tail_bound_neg(f));
  const double b = std::isfinite(hi) ? hi : std::max(1.0, tail_bound(f));
  std::vector<double> grid;
  if (a < b && opts.base_points >= 2) {
    const int n = opts.base_points;
    for (int i = 0; i < n; ++i) grid.push_back(a + (b - a) * i / (n - 1));
  }

  const detail::Isolation iso = detail::isolate(f, lo, hi, opts, Sign::Zero, grid);
  RootScan scan;
  scan.count = static_cast<int>(iso.roots.size());
  scan.brackets = iso.brackets;
  scan.roots = iso.roots;
  scan.tangential = iso.tangential;
  if (scan.count > sign_change_bound(f)) {
    throw std::logic_error("count_roots: root count exceeds the coefficient sign-change bound");
  }
  scan.bound_attained = !std::isfinite(lo) && !std::isfinite(hi) && scan.count == sign_change_bound(f);
  scan.certified = iso.complete || scan.bound_attained;
  return scan;
}

std::string SignPattern::str() const {
  std::string s;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (i) s += ',';
    s += sign_char(regions[i].sign);
  }
  return s;
}

SignPattern sign_pattern(const ExpSum& f, const ScanOptions& opts) {
  SignPattern p;
  if (f.empty()) return p;

  const Sign s0 = sign_at_zero_plus(f);
  const double top = std::max(tail_bound(f), 1.0);
  const std::vector<double> grid = detail::log_grid(top * 1e-7, top, opts.base_points);
  const detail::Isolation iso = detail::isolate(f, 0.0, kInf, opts, s0, grid);

  p.boundaries = iso.roots;
  p.tangential = iso.tangential;
  const std::size_t k = iso.roots.size();

  // Signs are anchored at +inf, where the slowest term decides.
  std::vector<Sign> signs(k + 1);
  signs[k] = asymptotic_sign(f);
  for (std::size_t i = k; i-- > 0;) signs[i] = flip(signs[i + 1]);

  std::vector<double> candidates = grid;
  const ExpSum df = derivative(f);
  if (!df.empty()) {
    const detail::Isolation crit = detail::isolate(df, 0.0, kInf, opts);
    candidates.insert(candidates.end(), crit.roots.begin(), crit.roots.end());
    candidates.insert(candidates.end(), crit.tangential.begin(), crit.tangential.end());
  }
  for (std::size_t i = 0; i < k; ++i) {
    const double left = i == 0 ? 0.0 : iso.roots[i - 1];
    candidates.push_back(left + (iso.roots[i] - left) / 2);
  }
  if (k > 0) {
    const double r = iso.roots.back();
    for (double m : {1.25, 1.5, 2.0, 3.0}) candidates.push_back(r * m + (m - 1));
  }

  struct Best {
    double x = 0;
    long double value = 0;
    bool found = false;
  };
  std::vector<Best> best(k + 1);
  for (double x : candidates) {
    if (!(x > 0)) continue;
    const auto it = std::lower_bound(iso.roots.begin(), iso.roots.end(), x);
    if (it != iso.roots.end() && *it == x) continue;
    const std::size_t region = static_cast<std::size_t>(it - iso.roots.begin());
    const ScaledValue v = evaluate(f, x);
    if (std::fabs(v.scaled) <= v.noise || sign_of(v.scaled) != signs[region]) continue;
    const long double u = v.unscaled();
    Best& b = best[region];
    if (!b.found || std::fabs(u) > std::fabs(b.value)) b = {x, u, true};
  }

  for (std::size_t i = 0; i <= k; ++i) {
    SignRegion r{signs[i], best[i].x, static_cast<double>(best[i].value), false};
    if (!best[i].found) {
      const double left = i == 0 ? 0.0 : iso.roots[i - 1];
      r.x = i < k ? left + (iso.roots[i] - left) / 2 : left + 1.0;
      r.value = eval(f, r.x);
      r.uncertain = true;
    }
    if (!(std::fabs(r.value) > opts.sign_floor)) r.uncertain = true;
    if (r.uncertain) p.certified = false;
    p.regions.push_back(r);
  }
  if (s0 == Sign::Zero || s0 != signs.front()) p.certified = false;
  if (p.changes() > sign_change_bound(f)) p.certified = false;
  return p;
}

}  // namespace ageorder
