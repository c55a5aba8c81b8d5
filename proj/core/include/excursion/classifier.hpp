#pragma once

#include <optional>
#include <string_view>

#include "excursion/counting.hpp"
#include "excursion/scaling.hpp"

namespace excursion {

class Trajectory;

enum class VerdictClass { Diffusive, NonDiffusive, Indeterminate };

enum class VerdictReason { SlopeInBand, SlopeOutOfBand, NoScalingRange, DegenerateSignal };

[[nodiscard]] std::string_view to_string(VerdictClass c) noexcept;
[[nodiscard]] std::string_view to_string(VerdictReason r) noexcept;

struct ClassifierConfig {
    /// Explicit grid; when empty the data-driven default grid is used.
    std::optional<EpsilonGrid> grid;
    std::size_t grid_points = 24;
    ScalingRangeRule range_rule;
    /// Number of high-count points used when no scaling range exists.
    std::size_t fallback_points = 6;
    double slope_lo = -2.5;
    double slope_hi = -1.0;
};

struct Verdict {
    VerdictClass verdict = VerdictClass::Indeterminate;
    VerdictReason reason = VerdictReason::DegenerateSignal;
    std::optional<SlopeFit> slope_fit;
    std::optional<ExcursionProfile> profile;
    /// True when the slope came from the no-scaling-range fallback fit.
    bool fallback = false;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Excursion-scaling diffusion test on a single series.
///
/// 1. quadratic variation and epsilon grid
/// 2. empirical and theoretical counts, K = N_emp / N_theory
/// 3. scaling range where K ~ 1, else the fallback fit over the
///    `fallback_points` smallest-epsilon points with trustworthy counts
/// 4. Diffusive iff the fitted slope lies in [slope_lo, slope_hi]
///
/// Constant or numerically flat input yields Indeterminate/degenerate-signal
/// rather than an exception.
[[nodiscard]] Verdict classify(const Trajectory& traj, const ClassifierConfig& config = {});

/// Quadratic variation below which a series counts as flat:
/// (1e-12 * range)^2 * n, and never below zero.
[[nodiscard]] bool is_degenerate(const Trajectory& traj, double qv) noexcept;

}  // namespace excursion
