#pragma once

// Star and convex transform order checks between parallel systems, built on
// the sign variation of V(x) = Fbar_Y(x) - Fbar_X(a x + b).
//
// Star order X <=* Y: for every a > 0, V(.; a, 0) changes sign at most once
// and only from - to +. Convex order: for every a > 0, b, V changes sign at
// most twice and a double change must read "+,-,+".

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ageorder/expsum.hpp"
#include "ageorder/systems.hpp"

namespace ageorder {

enum class Status { Holds, Fails, Inconclusive };

std::string to_string(Status s);

struct Witness {
  double a = 0;
  double b = 0;
  SignPattern pattern;
};

struct OrderVerdict {
  Status status = Status::Inconclusive;
  // Analytic argument behind a verdict; empty when the verdict is numerical.
  std::string certificate;
  std::optional<Witness> witness;
  std::vector<std::string> evidence;
  std::optional<Interval> suspect_a;
  int patterns_evaluated = 0;
};

namespace certificate {
inline constexpr const char* kMajorizedTwoComponent = "majorized-two-component";
inline constexpr const char* kIdenticalSystems = "identical-systems";
inline constexpr const char* kEmptyViolatingStrip = "empty-violating-strip";
inline constexpr const char* kStarOrderFails = "star-order-fails";
}  // namespace certificate

struct OrderOptions {
  ScanOptions scan;
  bool allow_numerical_holds = false;
  int a_points = 64;
  int b_points = 16;
  // (a, b) checked directly before any search.
  std::optional<std::pair<double, double>> probe;
};

/// Allowed star patterns: "", "+", "-", "-,+".
bool star_pattern_ok(const SignPattern& p);

/// Allowed convex patterns: at most two changes, and "+,-,+" if two.
bool convex_pattern_ok(const SignPattern& p);

/// 64 (by default) log-spaced points on [theta_1 / (2 lambda_n), 2] plus the
/// breakpoints theta_1/lambda_n, theta_1/lambda_1 and 1.
std::vector<double> star_a_grid(const HazardVector& lambda, const HazardVector& theta, int points);

/// Two-component star order check. Majorized pairs carry an analytic
/// certificate backed by numerical spot checks; other pairs are scanned over
/// a grid of a. Throws std::invalid_argument unless both systems have two
/// components.
OrderVerdict star_check(const HazardVector& lambda, const HazardVector& theta,
                        const OrderOptions& opts = {});

/// Two-component convex order check. Throws std::invalid_argument unless both
/// systems have two components.
OrderVerdict convex_check(const HazardVector& lambda, const HazardVector& theta,
                          const OrderOptions& opts = {});

enum class Region { Favorable1, Favorable2, Favorable3, ViolatingStrip };

std::string to_string(Region r);

/// Which part of the (a, b) plane the pair falls into for a majorized,
/// non-identical two-component pair:
///   a >= 1                                  -> Favorable1
///   theta_1/lambda_1 <= a < 1               -> Favorable2
///   a <= theta_1/lambda_2                   -> Favorable3
///   theta_1/lambda_2 < a < theta_1/lambda_1 -> ViolatingStrip
/// Throws std::domain_error for an unmajorized pair, DegenerateError for
/// lambda == theta.
Region region_classify(double a, double b, const HazardVector& lambda, const HazardVector& theta);

class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SearchError : public std::runtime_error {
 public:
  SearchError(const std::string& what, std::vector<std::pair<double, double>> attempts)
      : std::runtime_error(what), attempts_(std::move(attempts)) {}
  const std::vector<std::pair<double, double>>& attempts() const { return attempts_; }

 private:
  std::vector<std::pair<double, double>> attempts_;
};

struct CounterexampleReport {
  double a = 0;
  double b = 0;
  double a_low = 0;
  double a_high = 0;
  SignPattern pattern;
  double b0_used = 0;
  double x0_seed = 0;
  // (x0, b) pairs tried while looking for "+,-,+" at a = a_high.
  std::vector<std::pair<double, double>> attempts;
  // Range of X-arguments a x + b spanned by the sign changes of the witness;
  // the transform Fbar_Y^-1(Fbar_X(.)) must fail to be convex inside it.
  Interval window{0, 0};
};

/// Constructs a convex order violation for a strictly heterogeneous majorized
/// pair: fixes b so that V(.; a_high, b) reads "+,-,+", then lowers a into the
/// strip until the pattern reads "+,-,+,-" with every region certified.
/// Throws std::domain_error (unmajorized), DegenerateError (empty strip) or
/// SearchError.
CounterexampleReport violation_search(const HazardVector& lambda, const HazardVector& theta,
                                      const OrderOptions& opts = {});

/// dV/da at (x, a, b): x * f_X(a x + b). Requires x >= 0, a > 0, b >= 0.
double dVda(const HazardVector& lambda, double x, double a, double b);

struct SignMap {
  std::vector<double> a_values;
  std::vector<double> x_values;
  std::vector<std::int8_t> signs;  // row-major, one row per a

  std::int8_t at(std::size_t ai, std::size_t xi) const { return signs[ai * x_values.size() + xi]; }
  std::vector<std::int8_t> row(std::size_t ai) const;
};

/// Signs of V(x; a, b) on a uniform (a, x) grid. The strip edges
/// theta_1/lambda_2 and theta_1/lambda_1 are inserted as exact rows when they
/// fall inside a_range.
SignMap sign_map(const HazardVector& lambda, const HazardVector& theta, double b, Interval a_range,
                 Interval x_range, int a_resolution, int x_resolution,
                 double sign_floor = ScanOptions{}.sign_floor);

/// "+,-" style compression of a row of cell signs, skipping zero cells.
std::string compress_signs(const std::vector<std::int8_t>& cells);

/// Numerical star order scan for any n >= 2. Never returns Holds.
OrderVerdict star_check_n(const HazardVector& lambda, const HazardVector& theta,
                          const OrderOptions& opts = {});

}  // namespace ageorder
