#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "excursion/epsilon_grid.hpp"

namespace excursion {

class Trajectory;

/// Realized quadratic variation: sum of squared successive increments.
[[nodiscard]] double quadratic_variation(const Trajectory& traj) noexcept;
[[nodiscard]] double quadratic_variation(std::span<const double> values);

/// Number of completed epsilon-oscillations (up-leg plus down-leg pairs).
///
/// Alternating-extremum counter: a leg is recorded each time the path
/// reverses by at least epsilon from the running extremum of the current
/// direction. The very first leg is the first move of size epsilon in either
/// direction away from the opposite running extremum. Result is legs / 2
/// rounded down.
[[nodiscard]] std::int64_t count_excursions(const Trajectory& traj, double epsilon);
[[nodiscard]] std::int64_t count_excursions(std::span<const double> values, double epsilon);

/// Number of legs (half-oscillations) seen by the counter above.
[[nodiscard]] std::int64_t count_legs(std::span<const double> values, double epsilon);

/// qv / (2 eps^2) per grid point. Throws DegenerateSignal when qv == 0.
[[nodiscard]] std::vector<double> theoretical_counts(double qv, const EpsilonGrid& grid);

/// Per-epsilon empirical and predicted counts plus their ratio K.
struct ExcursionProfile {
    EpsilonGrid grid;
    std::vector<std::int64_t> n_emp;
    std::vector<double> n_theory;
    std::vector<double> k_ratio;
    double qv = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return grid.size(); }

    friend bool operator==(const ExcursionProfile&, const ExcursionProfile&) = default;
};

/// Builds a profile by counting at every grid point. Throws DegenerateSignal
/// for zero quadratic variation.
[[nodiscard]] ExcursionProfile excursion_profile(const Trajectory& traj, const EpsilonGrid& grid);

/// Assembles a profile from precomputed counts (used for fixtures and replays).
[[nodiscard]] ExcursionProfile make_profile(const EpsilonGrid& grid, std::vector<std::int64_t> n_emp,
                                            double qv);

}  // namespace excursion
