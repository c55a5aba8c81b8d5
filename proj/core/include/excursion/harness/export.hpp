#pragma once

#include <string>
#include <string_view>

#include "excursion/harness/sweep.hpp"

namespace excursion::harness {

enum class ExportFormat { Csv, Json };

[[nodiscard]] ExportFormat parse_format(std::string_view name);

/// Header dt,T,noise,accuracy,n_reps,slope_mean,slope_sd then one row per cell.
[[nodiscard]] std::string to_csv(const SweepResult& result);
/// Full record including plan echo, raw slopes and wall-clock metadata.
[[nodiscard]] std::string to_json(const SweepResult& result);
[[nodiscard]] SweepResult from_json(std::string_view text);

/// Writes CSV or JSON; I/O failures raise InputError naming the path.
void export_results(const SweepResult& result, const std::string& path, ExportFormat format);

}  // namespace excursion::harness
