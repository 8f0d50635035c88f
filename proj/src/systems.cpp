#include "ageorder/systems.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cfloat>
#include <cmath>
#include <numeric>

namespace ageorder {

HazardVector::HazardVector(std::vector<double> rates) : rates_(std::move(rates)) {
  if (rates_.empty()) throw std::invalid_argument("HazardVector: need at least one rate");
  for (double r : rates_) {
    if (!(r > 0) || !std::isfinite(r)) {
      throw std::invalid_argument("HazardVector: rates must be finite and positive");
    }
  }
  std::sort(rates_.begin(), rates_.end());
}

double HazardVector::total() const { return std::accumulate(rates_.begin(), rates_.end(), 0.0); }

HazardVector HazardVector::scaled(double k) const {
  std::vector<double> r(rates_);
  for (double& v : r) v *= k;
  return HazardVector(std::move(r));
}

ExpSum survival(const HazardVector& h) {
  const std::size_t n = h.size();
  if (n > kMaxComponents) throw std::length_error("survival: more than 20 components");
  std::vector<Term> raw;
  raw.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    double rate = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) rate += h[i];
    }
    raw.push_back({rate, std::popcount(mask) % 2 == 1 ? 1.0 : -1.0});
  }
  ExpSum s = canonicalize(std::move(raw));
  if (std::fabs(derivative_at_zero(s, 0) - 1.0L) > 1e-9L) {
    throw std::logic_error("survival: expansion does not equal one at the origin");
  }
  return s;
}

ExpSum density(const HazardVector& h) { return -derivative(survival(h)); }

long double cdf(const ExpSum& surv, double x) {
  if (!(x > 0)) return 0;
  long double s = 0;
  for (const Term& t : surv.terms()) {
    s -= t.coef * std::expm1(-static_cast<long double>(t.rate) * x);
  }
  return s;
}

double inverse_survival(const ExpSum& surv, double u) {
  if (!(u > 0) || !(u <= 1)) throw std::domain_error("inverse_survival: u must lie in (0, 1]");
  if (u == 1) return 0.0;
  auto value = [&](double x) { return evaluate(surv, x).unscaled(); };
  double hi = 1.0;
  while (value(hi) > u) {
    hi *= 2;
    if (!std::isfinite(hi)) throw std::domain_error("inverse_survival: no crossing found");
  }
  double lo = 0.0;
  for (;;) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (value(mid) > u ? lo : hi) = mid;
  }
  return hi;
}

double inverse_cdf(const ExpSum& surv, long double p) {
  if (!(p >= 0) || !(p < 1)) throw std::domain_error("inverse_cdf: p must lie in [0, 1)");
  if (p == 0) return 0.0;
  double hi = 1.0;
  while (cdf(surv, hi) < p) {
    hi *= 2;
    if (!std::isfinite(hi)) throw std::domain_error("inverse_cdf: no crossing found");
  }
  double lo = 0.0;
  for (;;) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (cdf(surv, mid) < p ? lo : hi) = mid;
  }
  return hi;
}

double failure_rate(const HazardVector& h, double x) {
  if (!(x > 0)) throw std::domain_error("failure_rate: x must be positive");
  const ExpSum s = survival(h);
  if (eval(s, x) == 0.0) {
    throw HazardOverflow("failure_rate: survival underflows", inverse_survival(s, DBL_MIN));
  }
  const ExpSum d = density(h);
  return static_cast<double>(evaluate(d, x).unscaled() / evaluate(s, x).unscaled());
}

bool majorizes(const HazardVector& lambda, const HazardVector& theta) {
  if (lambda.size() != theta.size()) throw std::domain_error("majorizes: length mismatch");
  const long double scale = std::max(lambda.total(), theta.total());
  const long double tol = 1e-12L * scale;
  long double sl = 0, st = 0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    sl += lambda[k];
    st += theta[k];
    if (k + 1 < lambda.size() && sl < st - tol) return false;
  }
  return std::fabs(sl - st) <= tol;
}

}  // namespace ageorder

namespace ageorder {

ExpSum difference_function(const HazardVector& lambda, const HazardVector& theta, double a, double b) {
  return survival(theta) - shift_scale(survival(lambda), a, b);
}

double transform_point(const ExpSum& surv_x, const ExpSum& surv_y, double x) {
  if (!(x > 0)) return 0.0;
  const long double s = evaluate(surv_x, x).unscaled();
  if (s > 0.5L) return inverse_cdf(surv_y, cdf(surv_x, x));
  if (!(s > 0)) throw std::domain_error("transform_point: survival underflows");
  return inverse_survival(surv_y, static_cast<double>(s));
}

}  // namespace ageorder
