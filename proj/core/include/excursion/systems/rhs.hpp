#pragma once

#include <span>
#include <vector>

#include "excursion/systems/system_spec.hpp"

namespace excursion::systems {

/// Right-hand side (drift for stochastic kinds) with parameters resolved once.
///
/// The stochastic Duffing drift uses the deterministic Duffing form
/// -delta v - alpha x - beta x^3 + gamma cos(omega t) with alpha = beta = -1 by
/// default, giving the drift -0.2 v + x + x^3 + 0.3 cos(1.2 t); other signs are
/// available through parameter overrides.
class VectorField {
public:
    VectorField(SystemKind kind, const ParamMap& params);

    [[nodiscard]] SystemKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    /// out = f(t, state). Throws InputError on dimension mismatch.
    void operator()(double t, std::span<const double> state, std::span<double> out) const;

    /// Diffusion loading per component for a unit Wiener increment; the same
    /// scalar increment drives every component (rank-1 noise). Zero for ODE kinds.
    void diffusion(std::span<const double> state, double sigma, std::span<double> out) const;

    /// One step of a map kind (in place). LCG operates on the integer state.
    void iterate(std::span<double> state) const;

private:
    SystemKind kind_;
    std::size_t dim_;
    // Resolved parameters; meaning depends on kind.
    double p_[6] = {};
};

/// Convenience wrapper: f(t, state) for ODE/SDE kinds, next state for maps.
[[nodiscard]] std::vector<double> system_rhs(SystemKind kind, const ParamMap& params,
                                             std::span<const double> state, double t);

}  // namespace excursion::systems
