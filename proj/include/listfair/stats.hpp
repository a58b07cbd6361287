#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "listfair/random.hpp"

namespace listfair {

struct XYPoint {
    double x;
    double y;
};

using XYSeries = std::vector<XYPoint>;

/// Gaussian-kernel Nadaraya-Watson estimate at each grid point.
/// Throws ValueError on empty data, non-finite values or bandwidth <= 0.
[[nodiscard]] XYSeries nadaraya_watson(std::span<const XYPoint> data, std::span<const double> grid,
                                       double bandwidth);

/// 1.06 * sd * n^(-1/5). Throws ValueError with fewer than two distinct values.
[[nodiscard]] double silverman_bandwidth(std::span<const double> xs);

struct ConfidenceInterval {
    double lower;
    double upper;
    double level;
    std::size_t resamples;
};

inline constexpr std::size_t kDefaultBootstrapResamples = 2000;

/// Percentile bootstrap of the mean. Throws ValueError on empty values,
/// level outside (0, 1) or zero resamples.
[[nodiscard]] ConfidenceInterval bootstrap_ci(std::span<const double> values, double level,
                                              std::size_t resamples, RandomSource& rng);

/// Linear-interpolation (type 7) quantile of already sorted data.
[[nodiscard]] double quantile_sorted(std::span<const double> sorted, double q);

[[nodiscard]] double mean(std::span<const double> values);
/// Sample (n-1) standard deviation; 0 for a single value.
[[nodiscard]] double sample_stddev(std::span<const double> values);

}  // namespace listfair
