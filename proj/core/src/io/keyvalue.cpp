#include "excursion/io/keyvalue.hpp"

#include <fmt/format.h>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "excursion/errors.hpp"

namespace excursion::io {

std::string_view trim(std::string_view s) noexcept {
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

bool try_parse_double(std::string_view text, double& out) {
    const std::string s(trim(text));
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) return false;
    out = v;
    return true;
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
    std::vector<KeyValue> out;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected key=value, got '" + std::string(line) + "'", line_no);
        }
        KeyValue kv{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
        if (kv.key.empty()) throw ConfigError("empty key", line_no);
        if (!seen.insert(kv.key).second) throw ConfigError("duplicate key '" + kv.key + "'", line_no);
        out.push_back(std::move(kv));
    }
    return out;
}

double parse_double(const KeyValue& kv) {
    double v = 0.0;
    if (!try_parse_double(kv.value, v)) {
        throw ConfigError("key '" + kv.key + "': expected a number, got '" + kv.value + "'", kv.line);
    }
    return v;
}

std::uint64_t parse_u64(const KeyValue& kv) {
    const std::string s(trim(kv.value));
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s.front() == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
        throw ConfigError("key '" + kv.key + "': expected a nonnegative integer, got '" + kv.value + "'",
                          kv.line);
    }
    return v;
}

std::vector<double> parse_double_list(const KeyValue& kv) {
    std::vector<double> out;
    std::string_view rest = kv.value;
    while (true) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        double v = 0.0;
        if (!try_parse_double(item, v)) {
            throw ConfigError("key '" + kv.key + "': bad list element '" + std::string(item) + "'", kv.line);
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{}", v);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw InputError("read failure on '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw InputError("write failure on '" + path + "'");
}

}  // namespace excursion::io
