#include "ageorder/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "ageorder/kernels.hpp"

namespace ageorder::oracle {

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

GridReport star_ratio_oracle(const HazardVector& lambda, const HazardVector& theta,
                             std::span<const double> grid, double tol) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw std::invalid_argument("star_ratio_oracle: grid must be positive and strictly increasing");
    }
  }
  GridReport r;
  r.grid_x.assign(grid.begin(), grid.end());
  r.values = kernels::transform_values(survival(lambda), survival(theta), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) r.values[i] /= grid[i];
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double drop = r.values[i] - r.values[i + 1];
    if (drop > tol) r.monotone_violations.push_back({i, drop});
  }
  return r;
}

GridReport convexity_oracle(const HazardVector& lambda, const HazardVector& theta,
                            std::span<const double> grid, double tol) {
  if (grid.size() < 3) throw std::invalid_argument("convexity_oracle: need at least three points");
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::fabs((grid[i] - grid[i - 1]) - h) > 1e-6 * h) {
      throw std::invalid_argument("convexity_oracle: grid must be uniform");
    }
  }
  GridReport r;
  r.grid_x.assign(grid.begin(), grid.end());
  r.values = kernels::transform_values(survival(lambda), survival(theta), grid);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double d2 = r.values[i - 1] - 2 * r.values[i] + r.values[i + 1];
    if (d2 < -tol) r.convexity_violations.push_back({i, -d2});
  }
  return r;
}

ConcavityHunt concavity_hunt(const HazardVector& lambda, const HazardVector& theta, Interval zoom,
                             std::size_t coarse_points, std::size_t zoom_points) {
  ConcavityHunt hunt;
  const auto coarse = uniform_grid(0.0, 5.0 / theta.front(), coarse_points);
  hunt.coarse = convexity_oracle(lambda, theta, coarse);
  if (zoom.hi > zoom.lo) {
    const auto fine = uniform_grid(zoom.lo, zoom.hi, zoom_points);
    hunt.zoomed = convexity_oracle(lambda, theta, fine);
  }
  return hunt;
}

McReport mc_survival(const HazardVector& h, std::size_t n_samples, std::uint64_t seed,
                     std::size_t report_points) {
  if (n_samples < 1000) throw std::invalid_argument("mc_survival: need at least 1000 samples");
  McReport r;
  r.rates.assign(h.rates().begin(), h.rates().end());
  r.n_samples = n_samples;
  r.seed = seed;

  std::vector<double> samples = kernels::sample_maxima(h, n_samples, seed);
  std::sort(samples.begin(), samples.end());
  const ExpSum s = survival(h);
  const double n = static_cast<double>(n_samples);

  // The empirical tail jumps from (n-i)/n to (n-i-1)/n at the i-th order
  // statistic; the sup is attained at one side of a jump.
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double analytic = eval(s, samples[i]);
    const double before = (n - static_cast<double>(i)) / n;
    const double after = (n - static_cast<double>(i) - 1) / n;
    const double d = std::max(std::fabs(before - analytic), std::fabs(after - analytic));
    if (d > r.sup_distance) {
      r.sup_distance = d;
      r.argmax_x = samples[i];
    }
  }

  const double top = samples.back();
  r.grid_x = uniform_grid(0.0, top, report_points);
  for (double x : r.grid_x) {
    const auto above = samples.end() - std::upper_bound(samples.begin(), samples.end(), x);
    r.empirical.push_back(static_cast<double>(above) / n);
    r.analytic.push_back(eval(s, x));
  }
  return r;
}

}  // namespace ageorder::oracle
