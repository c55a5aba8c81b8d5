#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace excursion::io {

/// Comma-separated numeric table. The first row is a header iff any of its
/// cells fails to parse as a number. UTF-8 BOM, LF and CRLF are accepted;
/// blank lines are skipped.
struct CsvTable {
    std::vector<std::string> header;  // empty when the file has none
    std::vector<std::vector<double>> columns;
    /// 1-based file line of each data row.
    std::vector<int> lines;

    [[nodiscard]] std::size_t rows() const noexcept { return lines.size(); }

    /// Column by header name or 0-based index (given as decimal text).
    [[nodiscard]] std::size_t column_index(std::string_view selector) const;
    /// Index of a column named "time" or "t" (case-sensitive), if any.
    [[nodiscard]] std::optional<std::size_t> time_column() const;
};

/// Throws InputError naming the line for ragged rows or non-numeric cells.
[[nodiscard]] CsvTable parse_csv(std::string_view text);

/// Simple returns r_k = (p_k - p_{k-1}) / p_{k-1}. A zero price raises
/// InputError naming `lines[k-1]` (or the 1-based position if lines is empty).
[[nodiscard]] std::vector<double> simple_returns(const std::vector<double>& prices,
                                                 const std::vector<int>& lines = {});

}  // namespace excursion::io
