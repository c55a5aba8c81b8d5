#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace excursion::io {

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;
};

/// Flat key=value lines. '#' starts a comment, blank lines are skipped,
/// whitespace around keys and values is trimmed. Duplicate keys and lines
/// without '=' raise ConfigError with the line number.
[[nodiscard]] std::vector<KeyValue> parse_key_values(std::string_view text);

[[nodiscard]] double parse_double(const KeyValue& kv);
[[nodiscard]] std::uint64_t parse_u64(const KeyValue& kv);
/// Comma-separated list of reals; "inf" and "+inf" are accepted.
[[nodiscard]] std::vector<double> parse_double_list(const KeyValue& kv);

/// Strict full-string real parse (accepts inf/nan spellings); false on garbage.
[[nodiscard]] bool try_parse_double(std::string_view text, double& out);

[[nodiscard]] std::string_view trim(std::string_view s) noexcept;

/// Shortest text that parses back to the same double.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace excursion::io
