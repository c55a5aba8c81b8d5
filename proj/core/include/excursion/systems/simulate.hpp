#pragma once

#include <cstdint>
#include <string>

#include "excursion/systems/system_spec.hpp"
#include "excursion/trajectory.hpp"

namespace excursion::systems {

struct GeneratedSeries {
    Trajectory trajectory;
    SystemSpec spec;
    GroundTruth ground_truth;
};

/// Time discarded before recording Chen and Lu trajectories.
inline constexpr double kAttractorTransient = 10.0;
/// SDE internal step never exceeds this fraction of the characteristic time.
inline constexpr double kSdeStepFraction = 1e-3;

/// Generates the first state component on the grid t_k = k * dt.
///
/// ODEs: adaptive RK23 (rtol 1e-6, atol 1e-9) with dense output.
/// Maps: direct iteration, x_k emitted at t_k. LCG emits x_k / m.
/// SDEs: Euler-Maruyama at an internal step dividing dt, subsampled.
/// CIR uses full truncation and emits max(x, 0).
/// Deterministic kinds with snr_db set get additive Gaussian noise afterwards.
///
/// Deterministic for a fixed spec. Throws SimulationDiverged when the state
/// leaves the finite range.
[[nodiscard]] GeneratedSeries simulate(const SystemSpec& spec);

/// Adds i.i.d. zero-mean Gaussian noise with variance var(x) / 10^(snr_db/10),
/// where var is the sample variance of the clean series. +inf returns the input.
/// Throws DegenerateSignal for a constant series.
[[nodiscard]] Trajectory add_noise_snr(const Trajectory& traj, double snr_db, std::uint64_t seed);

/// Two-column CSV with a "time,value" header.
[[nodiscard]] std::string to_csv(const Trajectory& traj);

}  // namespace excursion::systems
