#include "commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <json.hpp>
#include <ostream>

#include "excursion/errors.hpp"
#include "excursion/harness/export.hpp"
#include "excursion/harness/sweep.hpp"
#include "excursion/io/csv.hpp"
#include "excursion/io/keyvalue.hpp"
#include "excursion/systems/simulate.hpp"
#include "excursion/trajectory.hpp"

namespace excursion::cli {

namespace {

constexpr std::size_t kMaxTableRows = 24;

std::string verdict_token(VerdictClass c) {
    switch (c) {
        case VerdictClass::Diffusive: return "DIFFUSIVE";
        case VerdictClass::NonDiffusive: return "NON-DIFFUSIVE";
        case VerdictClass::Indeterminate: break;
    }
    return "INDETERMINATE";
}

std::vector<std::size_t> table_rows(std::size_t n) {
    std::vector<std::size_t> rows;
    if (n <= kMaxTableRows) {
        for (std::size_t i = 0; i < n; ++i) rows.push_back(i);
        return rows;
    }
    for (std::size_t r = 0; r < kMaxTableRows; ++r) rows.push_back(r * (n - 1) / (kMaxTableRows - 1));
    return rows;
}

}  // namespace

AnalysisReport cmd_analyze(const AnalyzeOptions& options) {
    const io::CsvTable table = io::parse_csv(io::read_file(options.path));
    if (table.rows() < 2) {
        throw InputError("'" + options.path + "' needs at least 2 numeric rows, found " + std::to_string(table.rows()));
    }
    const std::size_t col = options.column.empty() ? table.columns.size() - 1 : table.column_index(options.column);

    AnalysisReport report;
    report.path = options.path;
    report.column = col < table.header.size() ? table.header[col] : std::to_string(col);
    report.returns = options.returns;

    double dt = 1.0;
    if (options.dt) {
        dt = *options.dt;
    } else if (const auto tc = table.time_column(); tc && *tc != col) {
        const auto& t = table.columns[*tc];
        dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("sampling interval must be positive");
    report.dt = dt;

    std::vector<double> values = table.columns[col];
    if (options.returns) values = io::simple_returns(values, table.lines);
    report.n = values.size();
    const Trajectory traj(std::move(values), dt);

    ClassifierConfig config;
    config.grid_points = options.eps_points;
    if (options.eps_min || options.eps_max) {
        double lo = 0.0, hi = 0.0;
        if (!options.eps_min || !options.eps_max) {
            // One end given: take the other from the data-driven grid.
            const EpsilonGrid auto_grid = default_grid(traj, std::max<std::size_t>(options.eps_points, 8));
            lo = options.eps_min.value_or(auto_grid.values().front());
            hi = options.eps_max.value_or(auto_grid.values().back());
        } else {
            lo = *options.eps_min;
            hi = *options.eps_max;
        }
        config.grid = EpsilonGrid::geometric(lo, hi, options.eps_points);
    }

    try {
        report.verdict = classify(traj, config);
    } catch (const DegenerateSignal&) {
        report.verdict = Verdict{};
    }
    report.summary = summary_line(report.verdict);
    return report;
}

std::string summary_line(const Verdict& v) {
    std::string line = verdict_token(v.verdict) + ": ";
    if (v.slope_fit) {
        line += fmt::format("slope {:.2f} over eps[{}..{}]", v.slope_fit->slope, v.slope_fit->range_lo,
                            v.slope_fit->range_hi);
        if (v.fallback) line += " (fallback fit)";
    } else {
        line += "slope n/a";
    }
    line += fmt::format(" ({})", to_string(v.reason));
    return line;
}

std::string render_text(const AnalysisReport& r) {
    std::string out;
    out += fmt::format("input: {} column={} n={} dt={}{}\n", r.path, r.column, r.n, io::format_double(r.dt),
                       r.returns ? " (simple returns)" : "");
    if (r.verdict.profile) {
        const auto& p = *r.verdict.profile;
        out += fmt::format("quadratic variation: {:.6g}\n", p.qv);
        out += fmt::format("{:>10} {:>10} {:>12} {:>8}\n", "epsilon", "N_emp", "N_theory", "K");
        for (std::size_t i : table_rows(p.size())) {
            const bool in_fit = r.verdict.slope_fit && i >= r.verdict.slope_fit->range_lo &&
                                i <= r.verdict.slope_fit->range_hi;
            out += fmt::format("{:>10.2e} {:>10} {:>12.4g} {:>8.3f}{}\n", p.grid[i], p.n_emp[i], p.n_theory[i],
                               p.k_ratio[i], in_fit ? " *" : "");
        }
    }
    if (r.verdict.slope_fit) {
        const auto& f = *r.verdict.slope_fit;
        out += fmt::format("fit: slope={:.4f} intercept={:.4f} r2={:.4f} points={}\n", f.slope, f.intercept,
                           f.r_squared, f.n_points);
    }
    out += r.summary + "\n";
    return out;
}

std::string render_json(const AnalysisReport& r) {
    using nlohmann::json;
    json doc;
    doc["input"] = {{"path", r.path}, {"column", r.column}, {"n", r.n}, {"dt", r.dt}, {"returns", r.returns}};
    doc["verdict"] = std::string(to_string(r.verdict.verdict));
    doc["reason"] = std::string(to_string(r.verdict.reason));
    doc["fallback"] = r.verdict.fallback;
    if (r.verdict.slope_fit) {
        const auto& f = *r.verdict.slope_fit;
        doc["fit"] = {{"slope", f.slope},         {"intercept", f.intercept}, {"r_squared", f.r_squared},
                      {"range_lo", f.range_lo}, {"range_hi", f.range_hi},   {"n_points", f.n_points}};
    } else {
        doc["fit"] = nullptr;
    }
    if (r.verdict.profile) {
        const auto& p = *r.verdict.profile;
        doc["quadratic_variation"] = p.qv;
        json rows = json::array();
        for (std::size_t i = 0; i < p.size(); ++i) {
            rows.push_back({{"epsilon", p.grid[i]}, {"n_emp", p.n_emp[i]}, {"n_theory", p.n_theory[i]},
                            {"k", p.k_ratio[i]}});
        }
        doc["profile"] = rows;
    } else {
        doc["quadratic_variation"] = nullptr;
        doc["profile"] = json::array();
    }
    doc["summary"] = r.summary;
    return doc.dump(2) + "\n";
}

namespace {

int exit_for_verdict(const Verdict& v) {
    return v.verdict == VerdictClass::Indeterminate ? kExitDegenerate : kExitOk;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    return io::parse_double_list(io::KeyValue{what, text, 0});
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Excursion-scaling diffusion test for scalar time series"};
    app.fallthrough();
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    bool json_out = false;
    app.add_option("--seed", seed, "RNG seed (simulate) or base seed override (sweep)");
    app.add_flag("--json", json_out, "Machine-readable output");

    AnalyzeOptions aopt;
    auto* analyze = app.add_subcommand("analyze", "Classify a series read from CSV");
    analyze->add_option("path", aopt.path, "CSV file")->required();
    analyze->add_option("--column", aopt.column, "Column name or 0-based index (default: last)");
    analyze->add_option("--dt", aopt.dt, "Sampling interval (default: from time column, else 1)");
    analyze->add_flag("--returns", aopt.returns, "Convert prices to simple returns first");
    analyze->add_option("--eps-min", aopt.eps_min, "Smallest epsilon");
    analyze->add_option("--eps-max", aopt.eps_max, "Largest epsilon");
    analyze->add_option("--eps-points", aopt.eps_points, "Grid size")->check(CLI::Range(4, 100000));

    std::string kind_name, out_path, init_text, spec_path;
    std::optional<double> sim_dt, sim_T, snr, R;
    std::vector<std::string> param_items;
    auto* simulate = app.add_subcommand("simulate", "Generate a benchmark trajectory as CSV");
    simulate->add_option("--kind", kind_name, "System: " + systems::kind_names());
    simulate->add_option("--config", spec_path, "key=value system spec; flags override it");
    simulate->add_option("--dt", sim_dt, "Output sampling interval");
    simulate->add_option("--T", sim_T, "Duration");
    simulate->add_option("--snr", snr, "Additive-noise SNR in dB (deterministic kinds)");
    simulate->add_option("--R", R, "Noise control, sigma = 1/R (stochastic kinds)");
    simulate->add_option("--param", param_items, "Parameter override name=value (repeatable)");
    simulate->add_option("--init", init_text, "Initial state, comma-separated");
    simulate->add_option("--out", out_path, "Output CSV (default: stdout)");

    std::string plan_path, sweep_out, format_name = "csv";
    std::size_t threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo accuracy sweep from a plan file");
    sweep->add_option("plan", plan_path, "key=value plan file")->required();
    sweep->add_option("--out", sweep_out, "Output file (default: stdout)");
    sweep->add_option("--format", format_name, "csv or json");
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*analyze) {
            const AnalysisReport report = cmd_analyze(aopt);
            out << (json_out ? render_json(report) : render_text(report));
            return exit_for_verdict(report.verdict);
        }

        if (*simulate) {
            systems::SystemSpec spec;
            if (!spec_path.empty()) spec = systems::spec_from_config(io::read_file(spec_path));
            if (!kind_name.empty()) {
                const auto kind = systems::parse_kind(kind_name);
                if (kind != spec.kind) spec.params.clear();
                spec.kind = kind;
            } else if (spec_path.empty()) {
                throw InputError("simulate needs --kind (one of: " + systems::kind_names() + ")");
            }
            if (sim_dt) spec.dt = *sim_dt;
            if (sim_T) spec.T = *sim_T;
            if (seed) spec.seed = *seed;
            if (snr) spec.snr_db = *snr;
            if (R) spec.R = *R;
            if (systems::is_stochastic(spec.kind) && !spec.R) spec.R = 1.0;
            if (!init_text.empty()) spec.initial_state = parse_list(init_text, "--init");
            for (const auto& item : param_items) {
                const auto eq = item.find('=');
                if (eq == std::string::npos) throw InputError("--param expects name=value, got '" + item + "'");
                double v = 0.0;
                if (!io::try_parse_double(item.substr(eq + 1), v)) {
                    throw InputError("--param '" + item + "': value is not a number");
                }
                spec.params[std::string(io::trim(item.substr(0, eq)))] = v;
            }

            const auto series = systems::simulate(spec);
            const std::string csv = systems::to_csv(series.trajectory);
            std::ostream& echo = out_path.empty() ? err : out;
            if (out_path.empty()) {
                out << csv;
            } else {
                io::write_file(out_path, csv);
            }
            if (json_out) {
                nlohmann::json j = {{"ground_truth", std::string(to_string(series.ground_truth))},
                                    {"samples", series.trajectory.size()},
                                    {"spec", systems::to_config(spec)}};
                echo << j.dump(2) << "\n";
            } else {
                echo << "ground_truth = " << to_string(series.ground_truth) << "\n"
                     << "samples = " << series.trajectory.size() << "\n"
                     << systems::to_config(spec);
            }
            return kExitOk;
        }

        if (*sweep) {
            harness::SweepPlan plan = harness::plan_from_config(io::read_file(plan_path));
            if (seed) plan.base_seed = *seed;
            const auto format = json_out ? harness::ExportFormat::Json : harness::parse_format(format_name);
            const std::size_t total = plan.cell_count();
            harness::RunOptions ro;
            ro.threads = threads;
            ro.on_cell_done = [&err, total](std::size_t index, const harness::CellResult& c) {
                err << fmt::format("[cell {}/{}] dt={} T={} noise={} accuracy={:.3f}\n", index + 1, total,
                                   io::format_double(c.dt), io::format_double(c.T), io::format_double(c.noise),
                                   c.accuracy);
            };
            const auto result = harness::run_sweep(plan, ro);
            if (sweep_out.empty()) {
                out << (format == harness::ExportFormat::Csv ? harness::to_csv(result) : harness::to_json(result));
            } else {
                harness::export_results(result, sweep_out, format);
            }
            if (!result.all_cells_complete()) {
                err << "error: some cells did not produce a verdict for every realization\n";
                return kExitInternal;
            }
            return kExitOk;
        }
    } catch (const DegenerateSignal& e) {
        err << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SimulationDiverged& e) {
        err << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace excursion::cli
