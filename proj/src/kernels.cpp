#include "ageorder/kernels.hpp"

#include <cmath>
#include <random>

namespace ageorder::kernels {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on the open interval (0, 1) from the top 53 bits.
double open_unit(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }

std::int8_t cell_sign(const ExpSum& v, double x, double sign_floor) {
  const ScaledValue s = evaluate(v, x);
  if (std::fabs(s.scaled) <= s.noise) return 0;
  if (!(std::fabs(s.unscaled()) > sign_floor)) return 0;
  return s.scaled > 0 ? 1 : -1;
}

void fill_shard(const HazardVector& h, std::uint64_t seed, int shard, double* out, std::size_t count) {
  std::mt19937_64 eng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(shard))));
  for (std::size_t i = 0; i < count; ++i) {
    double m = 0;
    for (double rate : h.rates()) m = std::max(m, -std::log(open_unit(eng())) / rate);
    out[i] = m;
  }
}

}  // namespace

std::vector<SignPattern> patterns_over_a(const HazardVector& lambda, const HazardVector& theta,
                                         double b, std::span<const double> a_values,
                                         const ScanOptions& opts, Exec exec) {
  const long n = static_cast<long>(a_values.size());
  std::vector<SignPattern> out(a_values.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[i] = sign_pattern(difference_function(lambda, theta, a_values[i], b), opts);
    return out;
  }
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = sign_pattern(difference_function(lambda, theta, a_values[i], b), opts);
  return out;
}

std::vector<std::int8_t> sign_cells(const HazardVector& lambda, const HazardVector& theta, double b,
                                    std::span<const double> a_values,
                                    std::span<const double> x_values, double sign_floor, Exec exec) {
  const long rows = static_cast<long>(a_values.size());
  const std::size_t cols = x_values.size();
  std::vector<std::int8_t> out(a_values.size() * cols);
  auto row = [&](long i) {
    const ExpSum v = difference_function(lambda, theta, a_values[i], b);
    for (std::size_t j = 0; j < cols; ++j) out[i * cols + j] = cell_sign(v, x_values[j], sign_floor);
  };
  if (exec == Exec::Serial) {
    for (long i = 0; i < rows; ++i) row(i);
    return out;
  }
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < rows; ++i) row(i);
  return out;
}

std::vector<double> transform_values(const ExpSum& surv_x, const ExpSum& surv_y,
                                     std::span<const double> grid, Exec exec) {
  const long n = static_cast<long>(grid.size());
  std::vector<double> out(grid.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[i] = transform_point(surv_x, surv_y, grid[i]);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = transform_point(surv_x, surv_y, grid[i]);
  return out;
}

std::vector<double> sample_maxima(const HazardVector& h, std::size_t n, std::uint64_t seed, Exec exec) {
  std::vector<double> out(n);
  const std::size_t base = n / kSampleShards;
  const std::size_t extra = n % kSampleShards;
  auto offset = [&](int s) { return s * base + std::min<std::size_t>(s, extra); };
  auto count = [&](int s) { return base + (static_cast<std::size_t>(s) < extra ? 1 : 0); };
  if (exec == Exec::Serial) {
    for (int s = 0; s < kSampleShards; ++s) fill_shard(h, seed, s, out.data() + offset(s), count(s));
    return out;
  }
#pragma omp parallel for schedule(static)
  for (int s = 0; s < kSampleShards; ++s) fill_shard(h, seed, s, out.data() + offset(s), count(s));
  return out;
}

}  // namespace ageorder::kernels
