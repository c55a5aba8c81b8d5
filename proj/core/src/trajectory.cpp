#include "excursion/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "excursion/errors.hpp"

namespace excursion {

std::string_view to_string(GroundTruth truth) noexcept {
    switch (truth) {
        case GroundTruth::Diffusive: return "diffusive";
        case GroundTruth::Deterministic: return "deterministic";
        case GroundTruth::Unknown: break;
    }
    return "unknown";
}

Trajectory::Trajectory(std::vector<double> values, double dt, GroundTruth label)
    : values_(std::move(values)), dt_(dt), label_(label) {
    if (values_.size() < 2) {
        throw InputError("trajectory needs at least 2 samples, got " + std::to_string(values_.size()));
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw InputError("sampling interval must be positive and finite");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InputError("non-finite sample at index " + std::to_string(i));
        }
    }
}

double Trajectory::min() const noexcept { return *std::ranges::min_element(values_); }

double Trajectory::max() const noexcept { return *std::ranges::max_element(values_); }

}  // namespace excursion
