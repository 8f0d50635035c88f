#pragma once

// Data-parallel kernels. Each has a serial reference and an OpenMP variant
// producing identical output regardless of thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "ageorder/expsum.hpp"
#include "ageorder/systems.hpp"

namespace ageorder::kernels {

enum class Exec { Serial, Parallel };

/// sign_pattern of difference_function(lambda, theta, a, b) for each a.
std::vector<SignPattern> patterns_over_a(const HazardVector& lambda, const HazardVector& theta,
                                         double b, std::span<const double> a_values,
                                         const ScanOptions& opts, Exec exec = Exec::Parallel);

/// Row-major signs of V(x; a, b), rows over a, columns over x. A cell is 0
/// when |V| is within rounding noise or below sign_floor.
std::vector<std::int8_t> sign_cells(const HazardVector& lambda, const HazardVector& theta, double b,
                                    std::span<const double> a_values,
                                    std::span<const double> x_values, double sign_floor,
                                    Exec exec = Exec::Parallel);

/// transform_point over a grid.
std::vector<double> transform_values(const ExpSum& surv_x, const ExpSum& surv_y,
                                     std::span<const double> grid, Exec exec = Exec::Parallel);

inline constexpr int kSampleShards = 64;

/// n draws of the system lifetime max_i Exp(l_i), by inverse-CDF sampling.
/// Work is split into kSampleShards fixed shards with derived seeds, so the
/// output depends only on (h, n, seed).
std::vector<double> sample_maxima(const HazardVector& h, std::size_t n, std::uint64_t seed,
                                  Exec exec = Exec::Parallel);

}  // namespace ageorder::kernels
