#include "excursion/harness/export.hpp"

#include <cmath>
#include <json.hpp>

#include "excursion/errors.hpp"
#include "excursion/io/keyvalue.hpp"

namespace excursion::harness {

using nlohmann::json;

namespace {

// JSON has no inf/nan: non-finite reals travel as strings.
json real(double v) {
    if (std::isfinite(v)) return v;
    return io::format_double(v);
}

double real_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_null()) return NAN;
    const auto s = j.get<std::string>();
    double v = 0.0;
    if (!io::try_parse_double(s, v)) throw InputError("bad real '" + s + "' in sweep JSON");
    return v;
}

json reals(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(real(x));
    return a;
}

std::vector<double> reals_from(const json& j) {
    std::vector<double> out;
    for (const auto& x : j) out.push_back(real_from(x));
    return out;
}

}  // namespace

ExportFormat parse_format(std::string_view name) {
    if (name == "csv") return ExportFormat::Csv;
    if (name == "json") return ExportFormat::Json;
    throw InputError("unknown format '" + std::string(name) + "'; allowed: csv, json");
}

std::string to_csv(const SweepResult& result) {
    std::string out = "dt,T,noise,accuracy,n_reps,slope_mean,slope_sd\n";
    for (const auto& c : result.cells) {
        out += io::format_double(c.dt) + ',' + io::format_double(c.T) + ',' + io::format_double(c.noise) + ',' +
               io::format_double(c.accuracy) + ',' + std::to_string(c.n_reps) + ',' +
               io::format_double(c.slope_mean) + ',' + io::format_double(c.slope_sd) + '\n';
    }
    return out;
}

std::string to_json(const SweepResult& result) {
    const SweepPlan& p = result.plan;
    json params = json::object();
    for (const auto& [k, v] : p.params) params[k] = real(v);

    json plan = {
        {"kind", std::string(systems::to_string(p.kind))},
        {"dt_grid", reals(p.dt_grid)},
        {"T_grid", reals(p.T_grid)},
        {"noise_levels", reals(p.noise_levels)},
        {"reps", p.reps},
        {"base_seed", p.base_seed},
        {"grid_points", p.grid_points},
        {"params", params},
    };

    json cells = json::array();
    for (const auto& c : result.cells) {
        cells.push_back({
            {"dt", real(c.dt)},
            {"T", real(c.T)},
            {"noise", real(c.noise)},
            {"accuracy", real(c.accuracy)},
            {"n_reps", c.n_reps},
            {"n_correct", c.n_correct},
            {"n_indeterminate", c.n_indeterminate},
            {"n_failed", c.n_failed},
            {"slope_mean", real(c.slope_mean)},
            {"slope_sd", real(c.slope_sd)},
            {"slopes", reals(c.slopes)},
        });
    }

    json doc = {
        {"plan", plan},
        {"cells", cells},
        {"metadata", {{"wall_seconds", result.wall_seconds}, {"threads", result.threads}}},
    };
    return doc.dump(2) + "\n";
}

SweepResult from_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        SweepResult r;
        const json& p = doc.at("plan");
        r.plan.kind = systems::parse_kind(p.at("kind").get<std::string>());
        r.plan.dt_grid = reals_from(p.at("dt_grid"));
        r.plan.T_grid = reals_from(p.at("T_grid"));
        r.plan.noise_levels = reals_from(p.at("noise_levels"));
        r.plan.reps = p.at("reps").get<std::size_t>();
        r.plan.base_seed = p.at("base_seed").get<std::uint64_t>();
        r.plan.grid_points = p.at("grid_points").get<std::size_t>();
        for (const auto& [k, v] : p.at("params").items()) r.plan.params[k] = real_from(v);

        for (const json& c : doc.at("cells")) {
            CellResult cell;
            cell.dt = real_from(c.at("dt"));
            cell.T = real_from(c.at("T"));
            cell.noise = real_from(c.at("noise"));
            cell.accuracy = real_from(c.at("accuracy"));
            cell.n_reps = c.at("n_reps").get<std::size_t>();
            cell.n_correct = c.at("n_correct").get<std::size_t>();
            cell.n_indeterminate = c.at("n_indeterminate").get<std::size_t>();
            cell.n_failed = c.at("n_failed").get<std::size_t>();
            cell.slope_mean = real_from(c.at("slope_mean"));
            cell.slope_sd = real_from(c.at("slope_sd"));
            cell.slopes = reals_from(c.at("slopes"));
            r.cells.push_back(std::move(cell));
        }
        const json& meta = doc.at("metadata");
        r.wall_seconds = meta.at("wall_seconds").get<double>();
        r.threads = meta.at("threads").get<std::size_t>();
        return r;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed sweep JSON: ") + e.what());
    }
}

void export_results(const SweepResult& result, const std::string& path, ExportFormat format) {
    io::write_file(path, format == ExportFormat::Csv ? to_csv(result) : to_json(result));
}

}  // namespace excursion::harness
