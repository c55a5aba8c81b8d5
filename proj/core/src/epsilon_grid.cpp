#include "excursion/epsilon_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "excursion/errors.hpp"
#include "excursion/trajectory.hpp"

namespace excursion {

EpsilonGrid::EpsilonGrid(std::vector<double> epsilons) : eps_(std::move(epsilons)) {
    if (eps_.size() < kMinPoints) {
        throw InputError("epsilon grid needs at least " + std::to_string(kMinPoints) + " points");
    }
    for (std::size_t i = 0; i < eps_.size(); ++i) {
        if (!std::isfinite(eps_[i]) || eps_[i] <= 0.0) {
            throw InputError("epsilon grid values must be positive and finite");
        }
        if (i > 0 && !(eps_[i] > eps_[i - 1])) {
            throw InputError("epsilon grid must be strictly increasing");
        }
    }
}

EpsilonGrid EpsilonGrid::geometric(double lo, double hi, std::size_t n_points) {
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
        throw InputError("geometric grid needs 0 < lo < hi");
    }
    if (n_points < kMinPoints) {
        throw InputError("geometric grid needs at least " + std::to_string(kMinPoints) + " points");
    }
    std::vector<double> eps(n_points);
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        eps[i] = std::exp(log_lo + step * static_cast<double>(i));
    }
    // Pin the endpoints; exp(log(x)) can drift by an ulp.
    eps.front() = lo;
    eps.back() = hi;
    return EpsilonGrid(std::move(eps));
}

EpsilonGrid default_grid(const Trajectory& traj, std::size_t n_points) {
    if (n_points < 8) {
        throw InputError("default grid needs at least 8 points");
    }
    const double range = traj.range();
    if (!(range > 0.0)) {
        throw DegenerateSignal("constant signal: zero range");
    }

    const auto x = traj.values();
    std::vector<double> abs_dx(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        abs_dx[i] = std::abs(x[i + 1] - x[i]);
    }
    // Lower median for even counts keeps the grid independent of averaging.
    const auto mid = abs_dx.begin() + static_cast<std::ptrdiff_t>((abs_dx.size() - 1) / 2);
    std::nth_element(abs_dx.begin(), mid, abs_dx.end());
    const double median_step = *mid;

    const double hi = range / 4.0;
    double lo = std::max(2.0 * median_step, 1e-12 * range);
    if (lo >= hi) {
        lo = hi / 100.0;
    }
    return EpsilonGrid::geometric(lo, hi, n_points);
}

}  // namespace excursion
