#include "excursion/classifier.hpp"

#include "excursion/errors.hpp"
#include "excursion/trajectory.hpp"

namespace excursion {

std::string_view to_string(VerdictClass c) noexcept {
    switch (c) {
        case VerdictClass::Diffusive: return "diffusive";
        case VerdictClass::NonDiffusive: return "non-diffusive";
        case VerdictClass::Indeterminate: break;
    }
    return "indeterminate";
}

std::string_view to_string(VerdictReason r) noexcept {
    switch (r) {
        case VerdictReason::SlopeInBand: return "slope-in-band";
        case VerdictReason::SlopeOutOfBand: return "slope-out-of-band";
        case VerdictReason::NoScalingRange: return "no-scaling-range";
        case VerdictReason::DegenerateSignal: break;
    }
    return "degenerate-signal";
}

bool is_degenerate(const Trajectory& traj, double qv) noexcept {
    const double floor_step = 1e-12 * traj.range();
    return !(qv > 0.0) || qv < floor_step * floor_step * static_cast<double>(traj.size());
}

namespace {

std::optional<IndexRange> fallback_range(const ExcursionProfile& profile, const ClassifierConfig& config) {
    // n_emp is nonincreasing in epsilon, so the largest trustworthy counts
    // sit at the front of the grid.
    std::size_t first = profile.size();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile.n_emp[i] >= config.range_rule.min_count) {
            first = i;
            break;
        }
    }
    std::size_t usable = 0;
    for (std::size_t i = first; i < profile.size() && profile.n_emp[i] >= config.range_rule.min_count; ++i) {
        ++usable;
    }
    if (usable < config.fallback_points) return std::nullopt;
    return IndexRange{first, first + config.fallback_points - 1};
}

}  // namespace

Verdict classify(const Trajectory& traj, const ClassifierConfig& config) {
    Verdict v;
    const double qv = quadratic_variation(traj);
    if (is_degenerate(traj, qv)) {
        v.verdict = VerdictClass::Indeterminate;
        v.reason = VerdictReason::DegenerateSignal;
        return v;
    }

    const EpsilonGrid grid = config.grid ? *config.grid : default_grid(traj, config.grid_points);
    ExcursionProfile profile = excursion_profile(traj, grid);

    std::optional<IndexRange> range = select_scaling_range(profile, config.range_rule);
    if (!range) {
        range = fallback_range(profile, config);
        v.fallback = range.has_value();
    }
    if (!range) {
        v.verdict = VerdictClass::NonDiffusive;
        v.reason = VerdictReason::NoScalingRange;
        v.profile = std::move(profile);
        return v;
    }

    const SlopeFit fit = fit_slope(profile, *range);
    const bool in_band = fit.slope >= config.slope_lo && fit.slope <= config.slope_hi;
    v.verdict = in_band ? VerdictClass::Diffusive : VerdictClass::NonDiffusive;
    v.reason = in_band ? VerdictReason::SlopeInBand : VerdictReason::SlopeOutOfBand;
    v.slope_fit = fit;
    v.profile = std::move(profile);
    return v;
}

}  // namespace excursion
