// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "excursion/classifier.hpp"
#include "excursion/counting.hpp"
#include "excursion/harness/export.hpp"
#include "excursion/harness/sweep.hpp"
#include "excursion/io/keyvalue.hpp"
#include "excursion/scaling.hpp"
#include "excursion/systems/simulate.hpp"
#include "oracles.hpp"

using namespace excursion;
using systems::SystemKind;

namespace {

// Pinned tolerances.
constexpr double kSlopeLo = -2.2, kSlopeHi = -1.8;
constexpr double kDiffusiveFraction = 0.95;
constexpr double kRatioLo = 0.85, kRatioHi = 1.15;
constexpr double kQvTolerance = 0.01;
constexpr double kOuAccuracy = 0.98;
constexpr double kDeterministicAccuracy = 0.9;
constexpr double kShallowSlopeFraction = 0.9;
constexpr double kNoiseJump = 0.3;
constexpr double kPowerLawTolerance = 1e-6;
constexpr double kGbmFraction = 0.95;

struct Outcome {
    bool pass;
    std::string detail;
};

double median(std::vector<double> v) { return oracle::median(std::move(v)); }

std::string tmp(const std::string& name) { return (std::filesystem::path(EXCURSION_TEST_TMP) / name).string(); }

systems::SystemSpec spec(SystemKind kind, double dt, double T, std::uint64_t seed) {
    systems::SystemSpec s;
    s.kind = kind;
    s.dt = dt;
    s.T = T;
    s.seed = seed;
    if (systems::is_stochastic(kind)) s.R = 1.0;
    return s;
}

Outcome brownian_calibration() {
    constexpr int seeds = 200;
    std::vector<double> slopes, ratios;
    int diffusive = 0;
    for (int seed = 0; seed < seeds; ++seed) {
        const auto g = systems::simulate(spec(SystemKind::Brownian, 1e-3, 100.0, 5000 + seed));
        const auto v = classify(g.trajectory);
        if (v.verdict == VerdictClass::Diffusive) ++diffusive;
        if (!v.slope_fit) continue;
        slopes.push_back(v.slope_fit->slope);
        const auto& p = *v.profile;
        for (std::size_t i = v.slope_fit->range_lo; i <= v.slope_fit->range_hi; ++i) {
            ratios.push_back(p.grid[i] * p.grid[i] * static_cast<double>(p.n_emp[i]) / (p.qv / 2.0));
        }
    }
    const double ms = slopes.empty() ? std::numeric_limits<double>::quiet_NaN() : median(slopes);
    const double mr = ratios.empty() ? std::numeric_limits<double>::quiet_NaN() : median(ratios);
    const double frac = diffusive / static_cast<double>(seeds);
    const bool ok = ms >= kSlopeLo && ms <= kSlopeHi && frac >= kDiffusiveFraction && mr >= kRatioLo && mr <= kRatioHi;
    return {ok, fmt::format("median slope {:.3f} in [{}, {}], diffusive {:.3f} >= {}, median eps^2 N/(QV/2) {:.3f} "
                            "in [{}, {}]",
                            ms, kSlopeLo, kSlopeHi, frac, kDiffusiveFraction, mr, kRatioLo, kRatioHi)};
}

Outcome qv_estimator() {
    std::vector<double> dev;
    for (int seed = 0; seed < 100; ++seed) {
        const auto g = systems::simulate(spec(SystemKind::Brownian, 1e-6, 1.0, 9000 + seed));
        dev.push_back(std::abs(quadratic_variation(g.trajectory) - 1.0));
    }
    const double m = median(dev);
    return {m <= kQvTolerance, fmt::format("n=1e6, 100 seeds, median |QV-1| {:.5f} <= {}", m, kQvTolerance)};
}

harness::CellResult single_cell(SystemKind kind, double dt, double T, double noise, std::size_t reps,
                                std::uint64_t base_seed, const systems::ParamMap& params = {}) {
    harness::SweepPlan p;
    p.kind = kind;
    p.dt_grid = {dt};
    p.T_grid = {T};
    p.noise_levels = {noise};
    p.reps = reps;
    p.base_seed = base_seed;
    p.params = params;
    return harness::run_sweep(p).cells.at(0);
}

Outcome ou_accuracy() {
    const auto c = single_cell(SystemKind::OU, 1e-3, 100.0, 1.0, 50, 31);
    return {c.accuracy >= kOuAccuracy,
            fmt::format("accuracy {:.2f} >= {} (mean slope {:.3f})", c.accuracy, kOuAccuracy, c.slope_mean)};
}

Outcome deterministic_rejection() {
    struct Case {
        SystemKind kind;
        double dt, T;
    };
    const Case cases[] = {{SystemKind::SHM, 1e-3, 100.0},
                          {SystemKind::Logistic, 1.0, 1e4},
                          {SystemKind::Henon, 1.0, 1e4},
                          {SystemKind::LCG, 1.0, 1e4}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto r = single_cell(c.kind, c.dt, c.T, std::numeric_limits<double>::infinity(), 50, 41);
        const auto shallow = std::count_if(r.slopes.begin(), r.slopes.end(), [](double s) { return s > -1.0; });
        // Reps without a fit have no slope at all, so they count against the fraction.
        const double shallow_frac = static_cast<double>(shallow) / static_cast<double>(r.n_reps);
        const bool pass = r.accuracy >= kDeterministicAccuracy && shallow_frac >= kShallowSlopeFraction;
        ok = ok && pass;
        detail += fmt::format("{}{} acc {:.2f} s>-1 {:.2f}", detail.empty() ? "" : "; ", systems::to_string(c.kind),
                              r.accuracy, shallow_frac);
    }
    return {ok, detail + fmt::format(" (need acc >= {}, s>-1 >= {})", kDeterministicAccuracy, kShallowSlopeFraction)};
}

Outcome noise_transition() {
    const double snrs[] = {60.0, 30.0, 15.0};
    std::vector<double> frac;
    for (double snr : snrs) {
        // Ground truth is deterministic, so the Diffusive fraction is 1 - accuracy
        // minus any Indeterminate reps.
        const auto c = single_cell(SystemKind::SHM, 1e-3, 100.0, snr, 50, 51);
        frac.push_back(static_cast<double>(c.n_reps - c.n_correct - c.n_indeterminate - c.n_failed) /
                       static_cast<double>(c.n_reps));
    }
    const bool ok = frac[1] >= frac[0] && frac[2] >= frac[1] && frac[2] - frac[0] >= kNoiseJump;
    return {ok, fmt::format("diffusive fraction SNR60 {:.2f}, SNR30 {:.2f}, SNR15 {:.2f}; need nondecreasing and "
                            "SNR15 - SNR60 >= {}",
                            frac[0], frac[1], frac[2], kNoiseJump)};
}

struct MonotoneCheck {
    bool ok;
    std::vector<harness::CellResult> cells;
};

MonotoneCheck duffing_by_R(const systems::ParamMap& params) {
    MonotoneCheck m{true, {}};
    for (double R : {1.0, 0.5, 0.25}) m.cells.push_back(single_cell(SystemKind::StochasticDuffing, 1e-3, 100.0, R, 100, 61, params));
    // Nonincreasing in R: accuracy at each smaller R may not fall more than one
    // standard error below the accuracy at the previous larger R.
    for (std::size_t i = 1; i < m.cells.size(); ++i) {
        const double a = m.cells[i - 1].accuracy, b = m.cells[i].accuracy;
        const double pooled = std::max((a + b) / 2.0, 1.0 / 100.0);
        const double se = std::sqrt(pooled * (1.0 - pooled) / 100.0 * 2.0);
        if (b < a - se) m.ok = false;
    }
    return m;
}

Outcome duffing_monotonicity() {
    const auto printed = duffing_by_R({});
    std::size_t diverged = 0, total = 0;
    for (const auto& c : printed.cells) {
        diverged += c.n_indeterminate;
        total += c.n_reps;
    }
    std::string detail = fmt::format("accuracy at R=1,0.5,0.25: {:.2f}, {:.2f}, {:.2f}", printed.cells[0].accuracy,
                                     printed.cells[1].accuracy, printed.cells[2].accuracy);
    if (diverged == total) detail += " (vacuous: all realizations diverged under the +X+X^3 drift)";
    const auto flipped = duffing_by_R({{"beta", 1.0}});
    detail += fmt::format("; informational, drift +X-X^3: {:.2f}, {:.2f}, {:.2f} ({})", flipped.cells[0].accuracy,
                          flipped.cells[1].accuracy, flipped.cells[2].accuracy,
                          flipped.ok ? "monotone within 1 SE" : "not monotone within 1 SE");
    return {printed.ok, detail};
}

Outcome oracle_fixtures() {
    std::vector<std::string> failed;
    if (count_excursions(Trajectory({0, 1, 0, 1, 0}, 1.0), 0.5) != 2) failed.push_back("zigzag");
    for (double e : {0.5, 1.0, 2.0, 4.0}) {
        if (count_excursions(Trajectory({0, 1, 2, 3, 4}, 1.0), e) != 0) failed.push_back("monotone");
    }
    std::vector<double> sine;
    constexpr double A = 2.0;
    for (int k = 0; k <= 10 * 1000; ++k) sine.push_back(A * std::sin(2.0 * std::numbers::pi * k / 1000.0));
    const auto n_sine = count_excursions(Trajectory(sine, 1e-3), A / 2.0);
    const auto n_brute = oracle::brute_legs(sine, A / 2.0) / 2;
    if (n_sine < 9 || n_sine > 11 || n_sine != n_brute) failed.push_back("sine");

    double worst = 0.0;
    const auto grid = EpsilonGrid::geometric(1e-3, 1.0, 24);
    std::vector<double> x;
    for (double e : grid.values()) x.push_back(std::log(e));
    for (double p = -3.0; p <= 1e-12; p += 0.1) {
        std::vector<double> y;
        for (double lx : x) y.push_back(3.0 + p * lx);
        worst = std::max(worst, std::abs(fit_line(x, y).slope - p));
    }
    if (worst > kPowerLawTolerance) failed.push_back("power-law");
    std::string detail = fmt::format("zigzag, monotone, sine (n={}, oracle {}), power-law max error {:.1e} <= {}",
                                     n_sine, n_brute, worst, kPowerLawTolerance);
    if (!failed.empty()) detail += " failed:" + fmt::format(" {}", fmt::join(failed, ","));
    return {failed.empty(), detail};
}

int run_cli(std::vector<std::string> args, std::string& err_text) {
    args.insert(args.begin(), "excursion");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    err_text = err.str();
    return code;
}

Outcome sweep_determinism() {
    const auto plan = tmp("acceptance_plan.cfg");
    io::write_file(plan,
                   "kind = shm\n"
                   "dt_grid = 0.001, 0.01\n"
                   "T_grid = 10, 50\n"
                   "noise_levels = 40, 20\n"
                   "reps = 8\n"
                   "base_seed = 123\n");
    std::string err;
    const auto a = tmp("acceptance_t1.csv"), b = tmp("acceptance_t4.csv"), c = tmp("acceptance_t1b.csv");
    const int ca = run_cli({"sweep", plan, "--threads", "1", "--out", a}, err);
    const int cb = run_cli({"sweep", plan, "--threads", "4", "--out", b}, err);
    const int cc = run_cli({"sweep", plan, "--threads", "1", "--out", c}, err);
    if (ca != 0 || cb != 0 || cc != 0) return {false, "sweep command failed: " + err};
    const auto ta = io::read_file(a), tb = io::read_file(b), tc = io::read_file(c);
    return {ta == tb && ta == tc,
            fmt::format("8-cell plan, CSV {} bytes; threads 1 vs 4 {}, rerun {}", ta.size(),
                        ta == tb ? "identical" : "DIFFER", ta == tc ? "identical" : "DIFFER")};
}

Outcome gbm_returns() {
    // Minute-bar-like geometric Brownian prices: 30 days of 1440 bars,
    // per-bar volatility 1e-3, run through the CLI returns pipeline.
    constexpr std::size_t n = 43'200;
    constexpr double sigma = 1e-3;
    const auto path = tmp("acceptance_gbm.csv");
    int diffusive = 0;
    std::vector<double> slopes;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto w = oracle::brownian_path(n + 1, 1.0, 1.0, 7000 + seed);
        std::string csv = "time,price\n";
        for (std::size_t k = 0; k < w.size(); ++k) {
            const double t = static_cast<double>(k);
            csv += fmt::format("{},{}\n", t * 60.0, 30000.0 * std::exp(sigma * w[k] - 0.5 * sigma * sigma * t));
        }
        io::write_file(path, csv);
        cli::AnalyzeOptions opt;
        opt.path = path;
        opt.returns = true;
        const auto rep = cli::cmd_analyze(opt);
        if (rep.verdict.verdict == VerdictClass::Diffusive) ++diffusive;
        if (rep.verdict.slope_fit) slopes.push_back(rep.verdict.slope_fit->slope);
    }
    const double frac = diffusive / 100.0;
    return {frac >= kGbmFraction,
            fmt::format("synthetic GBM returns, n={}, diffusive {:.2f} >= {} (median slope {:.3f}); market-data "
                        "slopes and audio results need external datasets and are not reproduced",
                        n, frac, kGbmFraction, slopes.empty() ? std::nan("") : median(slopes))};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "brownian-calibration", brownian_calibration},
        {2, "qv-estimator", qv_estimator},
        {3, "ou-accuracy", ou_accuracy},
        {4, "deterministic-rejection", deterministic_rejection},
        {5, "noise-transition", noise_transition},
        {6, "stochastic-duffing-monotonicity", duffing_monotonicity},
        {7, "oracle-fixtures", oracle_fixtures},
        {8, "sweep-determinism", sweep_determinism},
        {9, "returns-pipeline", gbm_returns},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        fmt::print("[{}] criterion {} {}: {} ({:.1f}s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail, secs);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
