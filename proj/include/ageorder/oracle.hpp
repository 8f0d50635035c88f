#pragma once

// Brute-force validators that work from the definitions: the transform
// T(x) = Fbar_Y^-1(Fbar_X(x)) sampled on a grid, and Monte Carlo sampling of
// system lifetimes.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ageorder/expsum.hpp"
#include "ageorder/systems.hpp"

namespace ageorder::oracle {

inline constexpr double kGridTolerance = 1e-9;

struct GridViolation {
  std::size_t index;
  double magnitude;
};

struct GridReport {
  std::vector<double> grid_x;
  std::vector<double> values;
  std::vector<GridViolation> monotone_violations;
  std::vector<GridViolation> convexity_violations;
};

/// R(x) = T(x) / x on a strictly increasing positive grid; records every
/// adjacent pair where R drops by more than `tol`.
GridReport star_ratio_oracle(const HazardVector& lambda, const HazardVector& theta,
                             std::span<const double> grid, double tol = kGridTolerance);

/// Second differences of T on a uniform grid; records every one below -tol.
GridReport convexity_oracle(const HazardVector& lambda, const HazardVector& theta,
                            std::span<const double> grid, double tol = kGridTolerance);

std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

/// Default concavity hunt: 1e5 uniform points on [0, 5/theta_1], plus 1e4
/// points on `zoom` when it is nonempty. Violations of both passes are merged
/// into one report (indices refer to the zoomed grid for the second pass).
struct ConcavityHunt {
  GridReport coarse;
  GridReport zoomed;
  bool found() const { return !coarse.convexity_violations.empty() || !zoomed.convexity_violations.empty(); }
};
ConcavityHunt concavity_hunt(const HazardVector& lambda, const HazardVector& theta, Interval zoom,
                             std::size_t coarse_points = 100000, std::size_t zoom_points = 10000);

struct McReport {
  std::vector<double> rates;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  double sup_distance = 0;
  double argmax_x = 0;
  // Empirical and analytic tail on a fixed grid, for reporting.
  std::vector<double> grid_x;
  std::vector<double> empirical;
  std::vector<double> analytic;
};

/// Empirical survival of max_i Exp(l_i) from n_samples seeded draws compared
/// with survival(h); sup_distance is the Kolmogorov distance evaluated at
/// every sample point. Throws std::invalid_argument for n_samples < 1000.
McReport mc_survival(const HazardVector& h, std::size_t n_samples, std::uint64_t seed,
                     std::size_t report_points = 50);

}  // namespace ageorder::oracle
