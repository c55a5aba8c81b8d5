#include "excursion/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "excursion/classifier.hpp"
#include "excursion/errors.hpp"
#include "excursion/io/keyvalue.hpp"
#include "excursion/rng.hpp"
#include "excursion/systems/simulate.hpp"

namespace excursion::harness {

using systems::SystemKind;
using systems::SystemSpec;

namespace {

bool same_double(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

struct Realization {
    bool failed = false;
    bool correct = false;
    bool indeterminate = false;
    std::optional<double> slope;
};

Realization run_one(const SweepPlan& plan, double dt, double T, double noise, std::size_t rep) {
    Realization out;
    try {
        const auto series = systems::simulate(realization_spec(plan, dt, T, noise, rep));
        ClassifierConfig config;
        config.grid_points = plan.grid_points;
        const Verdict v = classify(series.trajectory, config);
        if (v.slope_fit) out.slope = v.slope_fit->slope;
        out.indeterminate = v.verdict == VerdictClass::Indeterminate;
        out.correct = (v.verdict == VerdictClass::Diffusive && series.ground_truth == GroundTruth::Diffusive) ||
                      (v.verdict == VerdictClass::NonDiffusive && series.ground_truth == GroundTruth::Deterministic);
    } catch (const SimulationDiverged&) {
        out.indeterminate = true;
    } catch (const DegenerateSignal&) {
        out.indeterminate = true;
    } catch (const std::exception&) {
        out.failed = true;
    }
    return out;
}

CellResult aggregate(double dt, double T, double noise, std::span<const Realization> reps) {
    CellResult cell;
    cell.dt = dt;
    cell.T = T;
    cell.noise = noise;
    cell.n_reps = reps.size();
    for (const auto& r : reps) {
        if (r.correct) ++cell.n_correct;
        if (r.indeterminate) ++cell.n_indeterminate;
        if (r.failed) ++cell.n_failed;
        if (r.slope) cell.slopes.push_back(*r.slope);
    }
    cell.accuracy = cell.n_reps ? static_cast<double>(cell.n_correct) / static_cast<double>(cell.n_reps) : 0.0;
    const auto m = static_cast<double>(cell.slopes.size());
    if (cell.slopes.empty()) {
        cell.slope_mean = NAN;
    } else {
        double s = 0.0;
        for (double x : cell.slopes) s += x;
        cell.slope_mean = s / m;
    }
    if (cell.slopes.size() < 2) {
        cell.slope_sd = NAN;
    } else {
        double ss = 0.0;
        for (double x : cell.slopes) ss += (x - cell.slope_mean) * (x - cell.slope_mean);
        cell.slope_sd = std::sqrt(ss / (m - 1.0));
    }
    return cell;
}

}  // namespace

bool CellResult::operator==(const CellResult& o) const {
    return same_double(dt, o.dt) && same_double(T, o.T) && same_double(noise, o.noise) &&
           same_double(accuracy, o.accuracy) && n_reps == o.n_reps && n_correct == o.n_correct &&
           n_indeterminate == o.n_indeterminate && n_failed == o.n_failed && same_double(slope_mean, o.slope_mean) &&
           same_double(slope_sd, o.slope_sd) && slopes == o.slopes;
}

bool SweepResult::all_cells_complete() const noexcept {
    return std::ranges::all_of(cells, [](const CellResult& c) { return c.n_failed == 0; });
}

void SweepPlan::validate() const {
    if (dt_grid.empty() || T_grid.empty() || noise_levels.empty()) {
        throw InputError("sweep grids must be nonempty");
    }
    if (reps < 1) throw InputError("reps must be at least 1");
    if (grid_points < 8) throw InputError("grid_points must be at least 8");
    for (double dt : dt_grid) {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("dt_grid values must be positive");
        for (double T : T_grid) {
            if (!std::isfinite(T) || T < kMinSamplesPerCell * dt) {
                throw InputError("cell (dt=" + io::format_double(dt) + ", T=" + io::format_double(T) +
                                 ") has fewer than 100 samples; need T >= 100*dt");
            }
        }
    }
    const bool stochastic = systems::is_stochastic(kind);
    for (double noise : noise_levels) {
        if (stochastic && (!(noise > 0.0) || !std::isfinite(noise))) throw InputError("R must be positive");
        if (!stochastic && (std::isnan(noise) || noise == -INFINITY)) {
            throw InputError("SNR levels must be numbers or +inf");
        }
    }
    // Parameter names are checked by the spec of the first cell.
    (void)realization_spec(*this, dt_grid.front(), T_grid.front(), noise_levels.front(), 0).validate();
}

SweepPlan plan_from_config(std::string_view text) {
    const auto entries = io::parse_key_values(text);
    SweepPlan plan;
    const io::KeyValue* kind_kv = nullptr;
    for (const auto& kv : entries) {
        if (kv.key == "kind") kind_kv = &kv;
    }
    if (!kind_kv) throw ConfigError("missing required key 'kind'");
    try {
        plan.kind = systems::parse_kind(kind_kv->value);
    } catch (const InputError& e) {
        throw ConfigError(e.what(), kind_kv->line);
    }

    const auto& defaults = systems::default_params(plan.kind);
    for (const auto& kv : entries) {
        if (kv.key == "kind") continue;
        if (kv.key == "dt_grid") plan.dt_grid = io::parse_double_list(kv);
        else if (kv.key == "T_grid") plan.T_grid = io::parse_double_list(kv);
        else if (kv.key == "noise_levels") plan.noise_levels = io::parse_double_list(kv);
        else if (kv.key == "reps") plan.reps = io::parse_u64(kv);
        else if (kv.key == "base_seed") plan.base_seed = io::parse_u64(kv);
        else if (kv.key == "grid_points") plan.grid_points = io::parse_u64(kv);
        else if (defaults.contains(kv.key)) plan.params[kv.key] = io::parse_double(kv);
        else throw ConfigError("unknown key '" + kv.key + "'", kv.line);
    }
    try {
        plan.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const InputError& e) {
        throw ConfigError(e.what());
    }
    return plan;
}

std::string to_config(const SweepPlan& plan) {
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + io::format_double(v[i]);
        return s;
    };
    std::string out;
    out += "kind = " + std::string(systems::to_string(plan.kind)) + "\n";
    out += "dt_grid = " + list(plan.dt_grid) + "\n";
    out += "T_grid = " + list(plan.T_grid) + "\n";
    out += "noise_levels = " + list(plan.noise_levels) + "\n";
    out += "reps = " + std::to_string(plan.reps) + "\n";
    out += "base_seed = " + std::to_string(plan.base_seed) + "\n";
    out += "grid_points = " + std::to_string(plan.grid_points) + "\n";
    for (const auto& [name, value] : plan.params) out += name + " = " + io::format_double(value) + "\n";
    return out;
}

std::uint64_t realization_seed(std::uint64_t base_seed, double dt, double T, double noise,
                               std::size_t rep) noexcept {
    return derive_seed({base_seed, std::bit_cast<std::uint64_t>(dt), std::bit_cast<std::uint64_t>(T),
                        std::bit_cast<std::uint64_t>(noise), static_cast<std::uint64_t>(rep)});
}

SystemSpec realization_spec(const SweepPlan& plan, double dt, double T, double noise, std::size_t rep) {
    SystemSpec spec;
    spec.kind = plan.kind;
    spec.params = plan.params;
    spec.dt = dt;
    spec.T = T;
    spec.seed = realization_seed(plan.base_seed, dt, T, noise, rep);
    if (systems::is_stochastic(plan.kind)) {
        spec.R = noise;
    } else if (std::isfinite(noise)) {
        spec.snr_db = noise;
    }
    return spec;
}

SweepResult run_sweep(const SweepPlan& plan, const RunOptions& options) {
    plan.validate();
    const auto start = std::chrono::steady_clock::now();

    struct Cell {
        double dt, T, noise;
    };
    std::vector<Cell> cells;
    cells.reserve(plan.cell_count());
    for (double noise : plan.noise_levels) {
        for (double dt : plan.dt_grid) {
            for (double T : plan.T_grid) cells.push_back({dt, T, noise});
        }
    }

    const std::size_t n_tasks = cells.size() * plan.reps;
    std::vector<Realization> slots(n_tasks);
    std::vector<std::atomic<std::size_t>> remaining(cells.size());
    for (auto& r : remaining) r.store(plan.reps);

    SweepResult result;
    result.plan = plan;
    result.cells.resize(cells.size());

    std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(n_tasks, 1));
    result.threads = threads;

    std::atomic<std::size_t> next{0};
    std::mutex done_mutex;
    auto worker = [&] {
        for (std::size_t task = next.fetch_add(1); task < n_tasks; task = next.fetch_add(1)) {
            const std::size_t ci = task / plan.reps;
            const std::size_t rep = task % plan.reps;
            const Cell& c = cells[ci];
            slots[task] = run_one(plan, c.dt, c.T, c.noise, rep);
            if (remaining[ci].fetch_sub(1) == 1) {
                // Last realization of this cell: every slot of the cell is written.
                result.cells[ci] = aggregate(c.dt, c.T, c.noise,
                                             std::span(slots).subspan(ci * plan.reps, plan.reps));
                if (options.on_cell_done) {
                    std::lock_guard lock(done_mutex);
                    options.on_cell_done(ci, result.cells[ci]);
                }
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

double SlopeHistogram::mode() const {
    if (counts.empty()) return NAN;
    const auto it = std::ranges::max_element(counts);  // first maximum
    const auto i = static_cast<std::size_t>(it - counts.begin());
    return 0.5 * (edges[i] + edges[i + 1]);
}

SlopeHistogram bin_slopes(std::vector<double> slopes) {
    SlopeHistogram h;
    const auto n_bins = static_cast<std::size_t>(std::lround((kHistHi - kHistLo) / kHistWidth));
    h.edges.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i) h.edges[i] = kHistLo + kHistWidth * static_cast<double>(i);
    h.counts.assign(n_bins, 0);
    for (double s : slopes) {
        if (s < kHistLo) {
            ++h.below;
        } else if (s > kHistHi) {
            ++h.above;
        } else {
            auto bin = static_cast<std::size_t>(std::floor((s - kHistLo) / kHistWidth));
            h.counts[std::min(bin, n_bins - 1)]++;
        }
    }
    h.slopes = std::move(slopes);
    return h;
}

SlopeHistogram slope_histogram(SystemKind kind, double noise, double dt, double T, std::size_t reps,
                               std::uint64_t base_seed, const systems::ParamMap& params, std::size_t threads) {
    if (reps < 30) throw InputError("slope histogram needs at least 30 realizations");
    SweepPlan plan;
    plan.kind = kind;
    plan.dt_grid = {dt};
    plan.T_grid = {T};
    plan.noise_levels = {noise};
    plan.reps = reps;
    plan.base_seed = base_seed;
    plan.params = params;
    RunOptions options;
    options.threads = threads;
    const SweepResult r = run_sweep(plan, options);
    SlopeHistogram h = bin_slopes(r.cells.front().slopes);
    h.skipped = reps - h.slopes.size();
    return h;
}

}  // namespace excursion::harness
