#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "excursion/classifier.hpp"

namespace excursion::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,
    kExitDegenerate = 3,
    kExitInternal = 4,
};

struct AnalyzeOptions {
    std::string path;
    /// Header name or 0-based index; empty selects the last column.
    std::string column;
    /// Sampling interval; when absent it comes from a time/t column, else 1.0.
    std::optional<double> dt;
    bool returns = false;
    std::optional<double> eps_min;
    std::optional<double> eps_max;
    std::size_t eps_points = 24;
};

struct AnalysisReport {
    Verdict verdict;
    std::string path;
    std::string column;
    std::size_t n = 0;
    double dt = 1.0;
    bool returns = false;
    std::string summary;
};

/// Reads, optionally converts prices to simple returns, classifies.
[[nodiscard]] AnalysisReport cmd_analyze(const AnalyzeOptions& options);

/// One line holding DIFFUSIVE, NON-DIFFUSIVE or INDETERMINATE and the slope to 2 decimals.
[[nodiscard]] std::string summary_line(const Verdict& verdict);
[[nodiscard]] std::string render_text(const AnalysisReport& report);
[[nodiscard]] std::string render_json(const AnalysisReport& report);

/// Parses argv and dispatches analyze | simulate | sweep. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace excursion::cli
