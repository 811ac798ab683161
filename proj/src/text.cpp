#include "lfm/text.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

#include "lfm/errors.hpp"

namespace lfm {

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        throw NumericError("fmt_double: value not representable");
    return std::string(buf, ptr);
}

std::string fmt_fixed(double v, int precision) {
    char buf[64];
    int n = std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    if (n < 0 || n >= static_cast<int>(sizeof buf))
        throw NumericError("fmt_fixed: value not representable");
    return std::string(buf, static_cast<std::size_t>(n));
}

double parse_double(std::string_view text, const std::string& context) {
    text = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw DataError(context + ": expected a number, got '" + std::string(text) + "'");
    return v;
}

int parse_int(std::string_view text, const std::string& context) {
    text = trim(text);
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw DataError(context + ": expected an integer, got '" + std::string(text) + "'");
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(delim, pos);
        if (next == std::string_view::npos) {
            out.emplace_back(s.substr(pos));
            break;
        }
        out.emplace_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

} // namespace lfm
