#pragma once

#include <cstddef>
#include <optional>

#include "excursion/counting.hpp"

namespace excursion {

/// Inclusive index range into an epsilon grid.
struct IndexRange {
    std::size_t lo = 0;
    std::size_t hi = 0;

    [[nodiscard]] std::size_t length() const noexcept { return hi - lo + 1; }

    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct ScalingRangeRule {
    double kappa = 1.5;              // K must lie in [1/kappa, kappa]
    std::size_t min_run = 4;         // shortest acceptable run
    std::int64_t min_count = 5;      // smallest trustworthy n_emp
};

/// Longest contiguous run where K is within the band and counts are
/// trustworthy. Ties go to the smaller mean |log K|, then to the lower start.
[[nodiscard]] std::optional<IndexRange> select_scaling_range(const ExcursionProfile& profile,
                                                             const ScalingRangeRule& rule = {});

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t range_lo = 0;
    std::size_t range_hi = 0;
    double r_squared = 0.0;
    std::size_t n_points = 0;

    friend bool operator==(const SlopeFit&, const SlopeFit&) = default;
};

/// Ordinary least squares of log n_emp against log epsilon over the range.
/// Requires at least four points and strictly positive counts; InputError otherwise.
[[nodiscard]] SlopeFit fit_slope(const ExcursionProfile& profile, IndexRange range);

/// Least-squares line through (x_i, y_i); the same estimator fit_slope uses.
[[nodiscard]] SlopeFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace excursion
