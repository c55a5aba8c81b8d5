#include "excursion/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "excursion/errors.hpp"
#include "excursion/io/keyvalue.hpp"

namespace excursion::io {

namespace {

std::vector<std::string_view> split_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        cells.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return cells;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    CsvTable table;
    bool first = true;
    std::size_t width = 0;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;

        const auto cells = split_row(line);
        if (first) {
            first = false;
            width = cells.size();
            table.columns.resize(width);
            bool numeric = true;
            double v = 0.0;
            for (auto c : cells) numeric = numeric && try_parse_double(c, v);
            if (!numeric) {
                for (auto c : cells) table.header.emplace_back(c);
                continue;
            }
        }
        if (cells.size() != width) {
            throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                             " columns, got " + std::to_string(cells.size()));
        }
        for (std::size_t j = 0; j < width; ++j) {
            double v = 0.0;
            if (!try_parse_double(cells[j], v) || !std::isfinite(v)) {
                throw InputError("line " + std::to_string(line_no) + ", column " + std::to_string(j + 1) +
                                 ": non-numeric value '" + std::string(cells[j]) + "'");
            }
            table.columns[j].push_back(v);
        }
        table.lines.push_back(line_no);
    }
    return table;
}

std::size_t CsvTable::column_index(std::string_view selector) const {
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == selector) return j;
    }
    std::size_t idx = 0;
    const auto* end = selector.data() + selector.size();
    const auto [ptr, ec] = std::from_chars(selector.data(), end, idx);
    if (ec == std::errc() && ptr == end && idx < columns.size()) return idx;
    throw InputError("no column '" + std::string(selector) + "' (file has " + std::to_string(columns.size()) +
                     " columns)");
}

std::optional<std::size_t> CsvTable::time_column() const {
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == "time" || header[j] == "t") return j;
    }
    return std::nullopt;
}

std::vector<double> simple_returns(const std::vector<double>& prices, const std::vector<int>& lines) {
    if (prices.size() < 2) throw InputError("returns need at least 2 prices");
    std::vector<double> r(prices.size() - 1);
    for (std::size_t k = 1; k < prices.size(); ++k) {
        const double prev = prices[k - 1];
        if (prev == 0.0) {
            const int where = lines.empty() ? static_cast<int>(k) : lines[k - 1];
            throw InputError("zero price at line " + std::to_string(where) + " makes the return undefined");
        }
        r[k - 1] = (prices[k] - prev) / prev;
    }
    return r;
}

}  // namespace excursion::io
