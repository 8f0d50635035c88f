#pragma once

// Finite sums of decaying exponentials, f(x) = sum_i c_i * exp(-r_i * x),
// with sign analysis on the real line and on (0, inf).

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ageorder {

inline constexpr double kMergeTol = 1e-12;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
char sign_char(Sign s);

struct Term {
  double rate;
  double coef;
};

/// Canonical exponential sum: rates strictly increasing, coefficients nonzero.
/// The empty sum is the zero function.
class ExpSum {
 public:
  ExpSum() = default;

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  double operator()(double x) const;

  friend ExpSum canonicalize(std::vector<Term> raw, double tol);

 private:
  std::vector<Term> terms_;
};

/// Sorts by rate, merges rates closer than tol (relative to max(1, rate)) and
/// drops coefficients that cancel to within tol of the merged magnitude.
/// Throws std::domain_error on a negative or non-finite rate.
ExpSum canonicalize(std::vector<Term> raw, double tol = kMergeTol);

ExpSum operator+(const ExpSum& f, const ExpSum& g);
ExpSum operator-(const ExpSum& f, const ExpSum& g);
ExpSum operator-(const ExpSum& f);
ExpSum operator*(double k, const ExpSum& f);

/// Value of f at x, summed in long double with Neumaier compensation.
double eval(const ExpSum& f, double x);

/// f(x) * exp(ref * x), where ref is the smallest rate for x >= 0 and the
/// largest rate for x < 0, so no term overflows. `noise` bounds the rounding
/// error of `scaled`.
struct ScaledValue {
  long double scaled = 0;
  long double noise = 0;
  double ref_rate = 0;
  double x = 0;
  long double unscaled() const;
};
ScaledValue evaluate(const ExpSum& f, double x);

/// Sign of f(x) when it exceeds the rounding noise, Zero otherwise.
Sign reliable_sign(const ExpSum& f, double x);

ExpSum derivative(const ExpSum& f);

/// g with g(x) = f(a*x + b). Requires a > 0 and b >= 0.
ExpSum shift_scale(const ExpSum& f, double a, double b);

/// Sign changes of the coefficients ordered by ascending rate. Bounds the
/// number of real zeros of f.
int sign_change_bound(const ExpSum& f);

/// Sign of f as x -> +inf (coefficient of the smallest rate).
Sign asymptotic_sign(const ExpSum& f);

/// Sign of f as x -> -inf (coefficient of the largest rate).
Sign asymptotic_sign_neg(const ExpSum& f);

/// Sum of c_i * (-r_i)^k, i.e. the k-th derivative at the origin, together
/// with the absolute mass used to judge whether it vanishes.
long double derivative_at_zero(const ExpSum& f, int k, long double* mass = nullptr);

/// Sign of f on (0, eps) from the first nonvanishing derivative of order <= 3.
/// Zero if f and its first three derivatives vanish at 0.
Sign sign_at_zero_plus(const ExpSum& f);

/// Smallest T >= 0 beyond which the slowest-decaying term provably dominates
/// the rest by a factor of two, so f keeps its asymptotic sign on [T, inf).
double tail_bound(const ExpSum& f);

/// Same for x -> -inf: f keeps the sign of its fastest term on (-inf, -T].
double tail_bound_neg(const ExpSum& f);

struct ScanOptions {
  double sign_floor = 1e-18;
  int base_points = 256;
  int max_refinements = 200;
  double x_tol = 1e-15;
};

struct Interval {
  double lo;
  double hi;
};

struct RootScan {
  int count = 0;
  std::vector<Interval> brackets;
  std::vector<double> roots;
  std::vector<double> tangential;
  bool certified = false;
  bool bound_attained = false;
};

class InconclusiveError : public std::runtime_error {
 public:
  InconclusiveError(const std::string& what, std::vector<Interval> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<Interval>& partial_brackets() const { return partial_; }

 private:
  std::vector<Interval> partial_;
};

/// Isolates the sign-changing roots of f in the open interval (lo, hi);
/// either end may be infinite. Even-multiplicity touch points are listed in
/// `tangential` and not counted. Throws std::invalid_argument for lo >= hi or
/// the zero sum, InconclusiveError when bisection does not converge within
/// opts.max_refinements, std::logic_error if the count exceeds
/// sign_change_bound(f).
RootScan count_roots(const ExpSum& f, double lo, double hi, const ScanOptions& opts = {});

struct SignRegion {
  Sign sign;
  double x;
  double value;
  bool uncertain = false;
};

/// Compressed sign sequence of f on (0, inf).
struct SignPattern {
  std::vector<SignRegion> regions;
  std::vector<double> boundaries;
  std::vector<double> tangential;
  bool certified = true;

  std::size_t size() const { return regions.size(); }
  int changes() const { return regions.empty() ? 0 : static_cast<int>(regions.size()) - 1; }
  bool starts_with(Sign s) const { return !regions.empty() && regions.front().sign == s; }
  /// "+,-,+" style rendering; empty string for the zero function.
  std::string str() const;
};

SignPattern sign_pattern(const ExpSum& f, const ScanOptions& opts = {});

namespace detail {

struct Isolation {
  std::vector<Interval> brackets;
  std::vector<double> roots;
  std::vector<double> tangential;
  bool complete = true;
};

// Sign-changing roots of f on (lo, hi). When left_sign is not Zero it
// replaces the evaluated sign at a finite lo. extra_nodes are additional
// sample points; they never affect correctness, only where bisection starts.
Isolation isolate(const ExpSum& f, double lo, double hi, const ScanOptions& opts,
                  Sign left_sign = Sign::Zero, std::span<const double> extra_nodes = {});

std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace detail

}  // namespace ageorder
