#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace excursion::systems {

struct Rk23Options {
    double rtol = 1e-6;
    double atol = 1e-9;
    double max_step = 0.0;  // 0 means unbounded
    double min_step = 1e-14;
    std::size_t max_steps = 50'000'000;
};

using OdeRhs = std::function<void(double, std::span<const double>, std::span<double>)>;

struct Rk23Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

/// Adaptive Bogacki-Shampine 3(2) integrator with cubic Hermite dense output.
///
/// Integrates from t0 with state y0 and reports the full state at the fixed
/// output times t0 + k * dt, k = 0..n_out-1. Output rows are laid out
/// contiguously (n_out * dim). Throws SimulationDiverged on non-finite state
/// or step-size collapse.
std::vector<double> integrate_rk23(const OdeRhs& rhs, double t0, std::span<const double> y0, double dt,
                                   std::size_t n_out, const Rk23Options& options = {},
                                   Rk23Stats* stats = nullptr);

}  // namespace excursion::systems
