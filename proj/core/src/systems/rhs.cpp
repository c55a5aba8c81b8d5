#include "excursion/systems/rhs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "excursion/errors.hpp"

namespace excursion::systems {

namespace {

std::vector<std::string_view> param_order(SystemKind kind) {
    switch (kind) {
        case SystemKind::SHM: return {"omega"};
        case SystemKind::Duffing:
        case SystemKind::StochasticDuffing: return {"delta", "alpha", "beta", "gamma", "omega"};
        case SystemKind::RayleighDuffing: return {"delta", "alpha", "beta", "gamma", "omega", "epsilon"};
        case SystemKind::Chen:
        case SystemKind::Lu: return {"a", "b", "c"};
        case SystemKind::Logistic: return {"r"};
        case SystemKind::Henon: return {"a", "b"};
        case SystemKind::LCG: return {"a", "c", "m"};
        case SystemKind::Brownian: return {};
        case SystemKind::OU: return {"theta", "mu"};
        case SystemKind::CIR: return {"kappa", "theta"};
    }
    return {};
}

}  // namespace

VectorField::VectorField(SystemKind kind, const ParamMap& params) : kind_(kind), dim_(state_dim(kind)) {
    const auto& defaults = default_params(kind);
    const auto names = param_order(kind);
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto it = params.find(names[i]);
        p_[i] = it != params.end() ? it->second : defaults.find(names[i])->second;
    }
}

void VectorField::operator()(double t, std::span<const double> s, std::span<double> out) const {
    if (s.size() != dim_ || out.size() != dim_) {
        throw InputError("state dimension " + std::to_string(s.size()) + " does not match system '" +
                         std::string(to_string(kind_)) + "' (" + std::to_string(dim_) + ")");
    }
    switch (kind_) {
        case SystemKind::SHM: {
            const double w = p_[0];
            out[0] = s[1];
            out[1] = -w * w * s[0];
            break;
        }
        case SystemKind::Duffing:
        case SystemKind::StochasticDuffing: {
            const double delta = p_[0], alpha = p_[1], beta = p_[2], gamma = p_[3], omega = p_[4];
            const double x = s[0], v = s[1];
            out[0] = v;
            out[1] = -delta * v - alpha * x - beta * x * x * x + gamma * std::cos(omega * t);
            break;
        }
        case SystemKind::RayleighDuffing: {
            const double delta = p_[0], alpha = p_[1], beta = p_[2], gamma = p_[3], omega = p_[4], eps = p_[5];
            const double x = s[0], v = s[1];
            out[0] = v;
            out[1] = -delta * v - eps * (v - v * v * v) - alpha * x - beta * x * x * x + gamma * std::cos(omega * t);
            break;
        }
        case SystemKind::Chen: {
            const double a = p_[0], b = p_[1], c = p_[2];
            const double x = s[0], y = s[1], z = s[2];
            out[0] = a * (y - x);
            out[1] = (c - a) * x - x * z + c * y;
            out[2] = x * y - b * z;
            break;
        }
        case SystemKind::Lu: {
            const double a = p_[0], b = p_[1], c = p_[2];
            const double x = s[0], y = s[1], z = s[2];
            out[0] = a * (y - x);
            out[1] = -x * z + c * y;
            out[2] = x * y - b * z;
            break;
        }
        case SystemKind::Brownian: out[0] = 0.0; break;
        case SystemKind::OU: out[0] = p_[0] * (p_[1] - s[0]); break;
        case SystemKind::CIR: out[0] = p_[0] * (p_[1] - std::max(s[0], 0.0)); break;
        case SystemKind::Logistic:
        case SystemKind::Henon:
        case SystemKind::LCG: {
            std::copy(s.begin(), s.end(), out.begin());
            iterate(out);
            break;
        }
    }
}

void VectorField::diffusion(std::span<const double> s, double sigma, std::span<double> out) const {
    switch (kind_) {
        case SystemKind::Brownian:
        case SystemKind::OU: out[0] = sigma; break;
        case SystemKind::CIR: out[0] = sigma * std::sqrt(std::max(s[0], 0.0)); break;
        case SystemKind::StochasticDuffing:
            out[0] = sigma;
            out[1] = sigma;
            break;
        default: std::fill(out.begin(), out.end(), 0.0); break;
    }
}

void VectorField::iterate(std::span<double> s) const {
    switch (kind_) {
        case SystemKind::Logistic: s[0] = p_[0] * s[0] * (1.0 - s[0]); break;
        case SystemKind::Henon: {
            const double x = s[0], y = s[1];
            s[0] = 1.0 - p_[0] * x * x + y;
            s[1] = p_[1] * x;
            break;
        }
        case SystemKind::LCG: {
            // a <= 2^32 and x < m <= 2^32, so a * x fits in 64 bits.
            const auto a = static_cast<std::uint64_t>(p_[0]);
            const auto c = static_cast<std::uint64_t>(p_[1]);
            const auto m = static_cast<std::uint64_t>(p_[2]);
            const auto x = static_cast<std::uint64_t>(s[0]);
            s[0] = static_cast<double>(((a * x) % m + c % m) % m);
            break;
        }
        default: throw InputError("system '" + std::string(to_string(kind_)) + "' is not a map");
    }
}

std::vector<double> system_rhs(SystemKind kind, const ParamMap& params, std::span<const double> state, double t) {
    VectorField field(kind, params);
    std::vector<double> out(field.dim());
    field(t, state, out);
    return out;
}

}  // namespace excursion::systems
