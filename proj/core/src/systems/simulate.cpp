#include "excursion/systems/simulate.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "excursion/errors.hpp"
#include "excursion/io/keyvalue.hpp"
#include "excursion/rng.hpp"
#include "excursion/systems/rhs.hpp"
#include "excursion/systems/rk23.hpp"

namespace excursion::systems {

namespace {

constexpr double kBlowup = 1e12;
constexpr std::uint64_t kPathStream = 0x5de5de5de;
constexpr std::uint64_t kNoiseStream = 0x4015e4015e;

void check_sample(double x, std::size_t k, SystemKind kind) {
    if (!std::isfinite(x) || std::abs(x) > kBlowup) {
        throw SimulationDiverged("system '" + std::string(to_string(kind)) + "' diverged at sample " +
                                 std::to_string(k));
    }
}

std::vector<double> simulate_ode(const SystemSpec& spec, const VectorField& field, std::vector<double> y0,
                                 std::size_t n) {
    const OdeRhs rhs = [&field](double t, std::span<const double> s, std::span<double> f) { field(t, s, f); };
    double t0 = 0.0;
    if (spec.kind == SystemKind::Chen || spec.kind == SystemKind::Lu) {
        const auto warm = integrate_rk23(rhs, 0.0, y0, kAttractorTransient, 2);
        y0.assign(warm.begin() + static_cast<std::ptrdiff_t>(y0.size()), warm.end());
        t0 = kAttractorTransient;
    }
    const auto states = integrate_rk23(rhs, t0, y0, spec.dt, n);
    const std::size_t dim = y0.size();
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = states[k * dim];
        check_sample(x[k], k, spec.kind);
    }
    return x;
}

std::vector<double> simulate_map(const SystemSpec& spec, const VectorField& field, std::vector<double> state,
                                 std::size_t n) {
    std::vector<double> x(n);
    const double scale = spec.kind == SystemKind::LCG ? 1.0 / spec.param("m") : 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) field.iterate(state);
        x[k] = state[0] * scale;
        check_sample(x[k], k, spec.kind);
    }
    return x;
}

double characteristic_time(const SystemSpec& spec) {
    switch (spec.kind) {
        case SystemKind::OU: return 1.0 / std::abs(spec.param("theta"));
        case SystemKind::CIR: return 1.0 / std::abs(spec.param("kappa"));
        default: return 1.0;
    }
}

std::vector<double> simulate_sde(const SystemSpec& spec, const VectorField& field, std::vector<double> state,
                                 std::size_t n) {
    const double sigma = noise_scale_from_R(*spec.R);
    const double cap = kSdeStepFraction * characteristic_time(spec);
    const auto substeps = static_cast<std::size_t>(std::max(1.0, std::ceil(spec.dt / cap * (1.0 - 1e-9))));
    const double h = spec.dt / static_cast<double>(substeps);
    const double sqrt_h = std::sqrt(h);

    Rng rng(derive_seed({spec.seed, static_cast<std::uint64_t>(spec.kind), kPathStream}));
    std::normal_distribution<double> normal(0.0, 1.0);

    const bool truncate = spec.kind == SystemKind::CIR;
    const std::size_t dim = state.size();
    std::vector<double> drift(dim), diff(dim);
    std::vector<double> x(n);
    x[0] = truncate ? std::max(state[0], 0.0) : state[0];
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t j = 0; j < substeps; ++j) {
            const double t = (static_cast<double>(k - 1) + static_cast<double>(j) / static_cast<double>(substeps)) *
                             spec.dt;
            field(t, state, drift);
            field.diffusion(state, sigma, diff);
            const double dw = sqrt_h * normal(rng);
            for (std::size_t i = 0; i < dim; ++i) state[i] += drift[i] * h + diff[i] * dw;
        }
        x[k] = truncate ? std::max(state[0], 0.0) : state[0];
        for (double v : state) check_sample(v, k, spec.kind);
    }
    return x;
}

}  // namespace

GeneratedSeries simulate(const SystemSpec& spec) {
    spec.validate();
    const std::size_t n = spec.sample_count();
    const VectorField field(spec.kind, spec.resolved_params());
    std::vector<double> state =
        spec.initial_state.empty() ? default_initial_state(spec.kind, spec.seed) : spec.initial_state;
    if (spec.kind == SystemKind::LCG && spec.initial_state.empty()) {
        state[0] = std::fmod(static_cast<double>(spec.seed % (1ULL << 53)), spec.param("m"));
    }
    if (spec.kind == SystemKind::CIR && spec.initial_state.empty()) state[0] = spec.param("theta");

    std::vector<double> x;
    switch (family(spec.kind)) {
        case Family::Ode: x = simulate_ode(spec, field, std::move(state), n); break;
        case Family::Map: x = simulate_map(spec, field, std::move(state), n); break;
        case Family::Sde: x = simulate_sde(spec, field, std::move(state), n); break;
    }

    const GroundTruth truth = ground_truth(spec.kind);
    Trajectory traj(std::move(x), spec.dt, truth);
    if (spec.snr_db && !is_stochastic(spec.kind)) {
        traj = add_noise_snr(traj, *spec.snr_db, derive_seed({spec.seed, static_cast<std::uint64_t>(spec.kind), kNoiseStream}));
    }
    return GeneratedSeries{std::move(traj), spec, truth};
}

Trajectory add_noise_snr(const Trajectory& traj, double snr_db, std::uint64_t seed) {
    if (std::isnan(snr_db) || snr_db == -INFINITY) throw InputError("SNR must be a number above -inf dB");
    const auto x = traj.values();
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double p_sig = ss / (n - 1.0);
    if (!(p_sig > 0.0)) throw DegenerateSignal("constant signal has no power to reference an SNR against");
    if (snr_db == INFINITY) return traj;

    const double noise_sd = std::sqrt(p_sig / std::pow(10.0, snr_db / 10.0));
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, noise_sd);
    std::vector<double> y(x.begin(), x.end());
    for (double& v : y) v += normal(rng);
    return Trajectory(std::move(y), traj.dt(), traj.label());
}

std::string to_csv(const Trajectory& traj) {
    std::string out = "time,value\n";
    const auto x = traj.values();
    for (std::size_t k = 0; k < x.size(); ++k) {
        out += io::format_double(static_cast<double>(k) * traj.dt());
        out += ',';
        out += io::format_double(x[k]);
        out += '\n';
    }
    return out;
}

}  // namespace excursion::systems
