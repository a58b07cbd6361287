#include "listfair/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "listfair/error.hpp"

namespace listfair {

double mean(std::span<const double> values) {
    if (values.empty()) throw ValueError("mean of empty data");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

XYSeries nadaraya_watson(std::span<const XYPoint> data, std::span<const double> grid, double bandwidth) {
    if (data.empty()) throw ValueError("kernel regression needs at least one data point");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) throw ValueError("bandwidth must be positive");
    for (const auto& p : data) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ValueError("kernel regression data must be finite");
    }

    XYSeries out;
    out.reserve(grid.size());
    const double inv_h = 1.0 / bandwidth;
    std::vector<double> log_w(data.size());
    for (double g : grid) {
        // Shift exponents by their maximum so far-away grid points do not
        // underflow every weight to zero.
        double max_lw = -INFINITY;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double u = (g - data[i].x) * inv_h;
            log_w[i] = -0.5 * u * u;
            max_lw = std::max(max_lw, log_w[i]);
        }
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double w = std::exp(log_w[i] - max_lw);
            num += w * data[i].y;
            den += w;
        }
        out.push_back({g, num / den});
    }
    return out;
}

double silverman_bandwidth(std::span<const double> xs) {
    if (xs.size() < 2 || std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
        throw ValueError("Silverman bandwidth needs at least two distinct values");
    }
    return 1.06 * sample_stddev(xs) * std::pow(static_cast<double>(xs.size()), -0.2);
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw ValueError("quantile of empty data");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

ConfidenceInterval bootstrap_ci(std::span<const double> values, double level, std::size_t resamples,
                                RandomSource& rng) {
    if (values.empty()) throw ValueError("bootstrap needs at least one value");
    if (!(level > 0.0 && level < 1.0)) throw ValueError("confidence level must lie in (0, 1)");
    if (resamples == 0) throw ValueError("bootstrap needs at least one resample");

    std::vector<double> means(resamples);
    const std::uint64_t n = values.size();
    // Accumulate offsets from values[0] so a constant sample reproduces its
    // value exactly.
    const double origin = values[0];
    for (auto& m : means) {
        double sum = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) sum += values[rng.uniform_below(n)] - origin;
        m = origin + sum / static_cast<double>(n);
    }
    std::sort(means.begin(), means.end());
    const double alpha = 1.0 - level;
    return {quantile_sorted(means, alpha / 2.0), quantile_sorted(means, 1.0 - alpha / 2.0), level, resamples};
}

}  // namespace listfair
