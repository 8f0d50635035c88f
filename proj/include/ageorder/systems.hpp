#pragma once

// Parallel systems of independent exponential components: the system
// lifetime is the maximum of the component lifetimes.

#include <span>
#include <stdexcept>
#include <vector>

#include "ageorder/expsum.hpp"

namespace ageorder {

inline constexpr std::size_t kMaxComponents = 20;

/// Component failure rates, sorted ascending, all strictly positive.
class HazardVector {
 public:
  explicit HazardVector(std::vector<double> rates);
  HazardVector(std::initializer_list<double> rates)
      : HazardVector(std::vector<double>(rates)) {}

  std::span<const double> rates() const { return rates_; }
  std::size_t size() const { return rates_.size(); }
  double operator[](std::size_t i) const { return rates_[i]; }
  double front() const { return rates_.front(); }
  double back() const { return rates_.back(); }
  double total() const;
  bool homogeneous() const { return rates_.front() == rates_.back(); }

  HazardVector scaled(double k) const;

  friend bool operator==(const HazardVector&, const HazardVector&) = default;

 private:
  std::vector<double> rates_;
};

/// Inclusion-exclusion expansion of prod_i (1 - exp(-l_i x)) complemented:
/// sum over nonempty subsets S of (-1)^(|S|+1) exp(-sum_S l_i x).
/// Throws std::length_error for more than kMaxComponents components.
ExpSum survival(const HazardVector& h);

ExpSum density(const HazardVector& h);

/// 1 - survival(x), computed with expm1 so small x keep full relative precision.
/// `surv` must be in survival form (coefficients summing to one).
long double cdf(const ExpSum& surv, double x);

class HazardOverflow : public std::overflow_error {
 public:
  HazardOverflow(const std::string& what, double largest_safe_x)
      : std::overflow_error(what), largest_safe_x_(largest_safe_x) {}
  double largest_safe_x() const { return largest_safe_x_; }

 private:
  double largest_safe_x_;
};

/// density / survival at x > 0. Throws HazardOverflow once the survival
/// underflows in double precision.
double failure_rate(const HazardVector& h, double x);

/// Smallest x with survival(x) <= u, for u in (0, 1]; accurate to the last
/// representable double. Throws std::domain_error outside (0, 1].
double inverse_survival(const ExpSum& surv, double u);

/// Smallest x with cdf(x) >= p, for p in [0, 1). Used on the upper half of
/// the distribution where survival values lose relative precision.
double inverse_cdf(const ExpSum& surv, long double p);

/// (lambda) is majorized by (theta): prefix sums of sorted lambda dominate
/// those of theta and the totals agree within a relative 1e-12.
bool majorizes(const HazardVector& lambda, const HazardVector& theta);

}  // namespace ageorder

namespace ageorder {

/// V(x) = survival_theta(x) - survival_lambda(a x + b): the function whose
/// sign variation decides the transform orders.
ExpSum difference_function(const HazardVector& lambda, const HazardVector& theta, double a, double b);

/// T(x) = inverse survival of Y applied to the survival of X. Matches on the
/// distribution function while the survival exceeds 1/2 so that small x keep
/// their relative precision.
double transform_point(const ExpSum& surv_x, const ExpSum& surv_y, double x);

}  // namespace ageorder
