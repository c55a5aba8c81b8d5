#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace excursion {

enum class GroundTruth { Unknown, Diffusive, Deterministic };

[[nodiscard]] std::string_view to_string(GroundTruth truth) noexcept;

/// Uniformly sampled scalar series. Construction validates: at least two
/// samples, dt > 0, every value finite. Immutable afterwards.
class Trajectory {
public:
    Trajectory(std::vector<double> values, double dt, GroundTruth label = GroundTruth::Unknown);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] GroundTruth label() const noexcept { return label_; }

    /// (n - 1) * dt
    [[nodiscard]] double duration() const noexcept {
        return static_cast<double>(values_.size() - 1) * dt_;
    }

    [[nodiscard]] double min() const noexcept;
    [[nodiscard]] double max() const noexcept;
    [[nodiscard]] double range() const noexcept { return max() - min(); }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
    std::vector<double> values_;
    double dt_;
    GroundTruth label_;
};

}  // namespace excursion
