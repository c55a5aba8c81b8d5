#include "excursion/counting.hpp"

#include <cmath>

#include "excursion/errors.hpp"
#include "excursion/trajectory.hpp"

namespace excursion {

namespace {

void check_finite(std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw InputError("non-finite sample");
    }
}

}  // namespace

double quadratic_variation(const Trajectory& traj) noexcept {
    const auto x = traj.values();
    double qv = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double d = x[i + 1] - x[i];
        qv += d * d;
    }
    return qv;
}

double quadratic_variation(std::span<const double> values) {
    check_finite(values);
    double qv = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double d = values[i + 1] - values[i];
        qv += d * d;
    }
    return qv;
}

std::int64_t count_legs(std::span<const double> values, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InputError("epsilon must be positive and finite");
    }
    if (values.empty()) return 0;

    enum class Mode { Unset, Up, Down };
    Mode mode = Mode::Unset;
    double hi = values[0];  // running max since the last event
    double lo = values[0];  // running min since the last event
    std::int64_t legs = 0;

    for (double x : values) {
        switch (mode) {
            case Mode::Unset:
                hi = std::max(hi, x);
                lo = std::min(lo, x);
                if (x - lo >= epsilon) {
                    ++legs;
                    mode = Mode::Up;
                    hi = x;
                } else if (hi - x >= epsilon) {
                    ++legs;
                    mode = Mode::Down;
                    lo = x;
                }
                break;
            case Mode::Up:
                if (x > hi) {
                    hi = x;
                } else if (hi - x >= epsilon) {
                    ++legs;
                    mode = Mode::Down;
                    lo = x;
                }
                break;
            case Mode::Down:
                if (x < lo) {
                    lo = x;
                } else if (x - lo >= epsilon) {
                    ++legs;
                    mode = Mode::Up;
                    hi = x;
                }
                break;
        }
    }
    return legs;
}

std::int64_t count_excursions(std::span<const double> values, double epsilon) {
    check_finite(values);
    return count_legs(values, epsilon) / 2;
}

std::int64_t count_excursions(const Trajectory& traj, double epsilon) {
    return count_legs(traj.values(), epsilon) / 2;
}

std::vector<double> theoretical_counts(double qv, const EpsilonGrid& grid) {
    if (!std::isfinite(qv) || qv < 0.0) {
        throw InputError("quadratic variation must be finite and nonnegative");
    }
    if (qv == 0.0) {
        throw DegenerateSignal("zero quadratic variation");
    }
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = qv / (2.0 * grid[i] * grid[i]);
    }
    return out;
}

ExcursionProfile make_profile(const EpsilonGrid& grid, std::vector<std::int64_t> n_emp, double qv) {
    if (n_emp.size() != grid.size()) {
        throw InputError("count vector length does not match the grid");
    }
    ExcursionProfile p{grid, std::move(n_emp), theoretical_counts(qv, grid), {}, qv};
    p.k_ratio.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p.k_ratio[i] = static_cast<double>(p.n_emp[i]) / p.n_theory[i];
    }
    return p;
}

ExcursionProfile excursion_profile(const Trajectory& traj, const EpsilonGrid& grid) {
    const double qv = quadratic_variation(traj);
    if (qv == 0.0) {
        throw DegenerateSignal("zero quadratic variation");
    }
    std::vector<std::int64_t> counts(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        counts[i] = count_excursions(traj, grid[i]);
    }
    return make_profile(grid, std::move(counts), qv);
}

}  // namespace excursion
