#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "excursion/systems/system_spec.hpp"

namespace excursion::harness {

/// Minimum samples per realization: every cell needs T >= kMinSamplesPerCell * dt.
inline constexpr double kMinSamplesPerCell = 100.0;

struct SweepPlan {
    systems::SystemKind kind = systems::SystemKind::Brownian;
    std::vector<double> dt_grid{1e-3, 5e-3, 1e-2, 5e-2};
    std::vector<double> T_grid{10.0, 50.0, 100.0, 500.0};
    /// SNR in dB for deterministic kinds (inf = clean), R for stochastic kinds.
    std::vector<double> noise_levels{1.0};
    std::size_t reps = 50;
    std::uint64_t base_seed = 0;
    std::size_t grid_points = 24;
    /// Parameter overrides applied to every realization.
    systems::ParamMap params;

    /// Throws InputError (ConfigError for parsed plans) on the first violation.
    void validate() const;
    [[nodiscard]] std::size_t cell_count() const noexcept {
        return noise_levels.size() * dt_grid.size() * T_grid.size();
    }

    friend bool operator==(const SweepPlan&, const SweepPlan&) = default;
};

/// key=value plan file: kind, dt_grid, T_grid, noise_levels, reps, base_seed,
/// grid_points, plus any parameter name of the kind. Lists are comma-separated.
[[nodiscard]] SweepPlan plan_from_config(std::string_view text);
[[nodiscard]] std::string to_config(const SweepPlan& plan);

struct CellResult {
    double dt = 0.0;
    double T = 0.0;
    double noise = 0.0;
    double accuracy = 0.0;
    std::size_t n_reps = 0;
    std::size_t n_correct = 0;
    /// Realizations that diverged or came out Indeterminate.
    std::size_t n_indeterminate = 0;
    /// Realizations that raised an unexpected error (no verdict produced).
    std::size_t n_failed = 0;
    /// NaN when fewer than one (mean) or two (sd) slopes exist.
    double slope_mean = 0.0;
    double slope_sd = 0.0;
    /// One entry per realization that produced a slope fit, in rep order.
    std::vector<double> slopes;

    bool operator==(const CellResult& other) const;
};

struct SweepResult {
    SweepPlan plan;
    std::vector<CellResult> cells;
    double wall_seconds = 0.0;
    std::size_t threads = 1;

    [[nodiscard]] bool all_cells_complete() const noexcept;

    bool operator==(const SweepResult& other) const = default;
};

/// Seed of realization `rep` in the cell with coordinates (dt, T, noise).
/// Depends only on those coordinates, so growing a grid leaves existing cells unchanged.
[[nodiscard]] std::uint64_t realization_seed(std::uint64_t base_seed, double dt, double T, double noise,
                                             std::size_t rep) noexcept;

/// Builds the spec of one realization.
[[nodiscard]] systems::SystemSpec realization_spec(const SweepPlan& plan, double dt, double T, double noise,
                                                   std::size_t rep);

struct RunOptions {
    /// 0 selects std::thread::hardware_concurrency().
    std::size_t threads = 0;
    /// Called once per finished cell (index, result) from a worker thread, serialized.
    std::function<void(std::size_t, const CellResult&)> on_cell_done;
};

/// Cells are ordered noise-major, then dt, then T. Bit-identical for a given
/// plan regardless of thread count.
[[nodiscard]] SweepResult run_sweep(const SweepPlan& plan, const RunOptions& options = {});

struct SlopeHistogram {
    std::vector<double> slopes;
    /// Bin edges: kHistLo, kHistLo + kHistWidth, ..., kHistHi.
    std::vector<double> edges;
    std::vector<std::size_t> counts;
    std::size_t below = 0;
    std::size_t above = 0;
    /// Realizations without a slope (diverged, degenerate, no range).
    std::size_t skipped = 0;

    /// Center of the most populated bin (lowest on ties).
    [[nodiscard]] double mode() const;
};

inline constexpr double kHistLo = -4.0;
inline constexpr double kHistHi = 1.0;
inline constexpr double kHistWidth = 0.1;

/// Bins slopes into fixed 0.1-wide bins on [-4, 1].
[[nodiscard]] SlopeHistogram bin_slopes(std::vector<double> slopes);

/// Single-cell ensemble of fitted slopes. reps must be at least 30.
[[nodiscard]] SlopeHistogram slope_histogram(systems::SystemKind kind, double noise, double dt, double T,
                                             std::size_t reps, std::uint64_t base_seed,
                                             const systems::ParamMap& params = {}, std::size_t threads = 0);

}  // namespace excursion::harness
