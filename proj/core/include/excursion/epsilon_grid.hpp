#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace excursion {

class Trajectory;

/// Strictly increasing, strictly positive amplitude thresholds (at least four).
class EpsilonGrid {
public:
    static constexpr std::size_t kMinPoints = 4;

    explicit EpsilonGrid(std::vector<double> epsilons);

    /// n_points values spaced geometrically from lo to hi inclusive.
    static EpsilonGrid geometric(double lo, double hi, std::size_t n_points);

    [[nodiscard]] std::span<const double> values() const noexcept { return eps_; }
    [[nodiscard]] std::size_t size() const noexcept { return eps_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return eps_[i]; }

    friend bool operator==(const EpsilonGrid&, const EpsilonGrid&) = default;

private:
    std::vector<double> eps_;
};

/// Data-driven geometric grid.
///
/// Lower end is max(2 * median|dx|, 1e-12 * range); upper end is range / 4.
/// When the increments are as large as the range itself (maps, white noise)
/// the lower end would meet or exceed the upper end; in that case the lower
/// end is pulled down to upper / 100 so the grid still spans two decades.
///
/// Throws DegenerateSignal for a constant series and InputError for
/// n_points < 8.
[[nodiscard]] EpsilonGrid default_grid(const Trajectory& traj, std::size_t n_points = 24);

}  // namespace excursion
