#pragma once

// Line-oriented `key = value` files shared by Sellmeier data files and run
// configurations. `#` starts a comment; blank lines are ignored.

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace qpmspdc {

struct KeyValueEntry {
    std::string key;
    std::string value;
    int line = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char delim) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(delim, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

/// Strict real-number parse: the whole token must be consumed.
inline bool parse_real(std::string_view token, double& out) {
    const std::string text(trim(token));
    if (text.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE) return false;
    out = v;
    return true;
}

inline bool parse_int(std::string_view token, long& out) {
    const std::string text(trim(token));
    if (text.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size() || errno == ERANGE) return false;
    out = v;
    return true;
}

} // namespace detail

class KeyValueFile {
public:
    static KeyValueFile parse(std::string_view text, std::string origin = "<string>") {
        KeyValueFile file;
        file.origin_ = std::move(origin);
        int line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto end = text.find('\n', start);
            std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line = detail::trim(line);
            if (!line.empty()) {
                const auto eq = line.find('=');
                if (eq == std::string_view::npos)
                    throw ParseError(file.origin_ + ":" + std::to_string(line_no) + ": expected `key = value`");
                KeyValueEntry entry{std::string(detail::trim(line.substr(0, eq))),
                                    std::string(detail::trim(line.substr(eq + 1))), line_no};
                if (entry.key.empty())
                    throw ParseError(file.origin_ + ":" + std::to_string(line_no) + ": empty key");
                if (file.find(entry.key))
                    throw ParseError(file.origin_ + ":" + std::to_string(line_no) + ": duplicate key `" + entry.key + "`");
                file.entries_.push_back(std::move(entry));
            }
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
        return file;
    }

    static KeyValueFile load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open `" + path.string() + "`");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str(), path.string());
    }

    const KeyValueEntry* find(std::string_view key) const noexcept {
        for (const auto& e : entries_)
            if (e.key == key) return &e;
        return nullptr;
    }

    const KeyValueEntry& require(std::string_view key) const {
        if (const auto* e = find(key)) return *e;
        throw ParseError(origin_ + ": missing required key `" + std::string(key) + "`");
    }

    const std::vector<KeyValueEntry>& entries() const noexcept { return entries_; }
    const std::string& origin() const noexcept { return origin_; }

    std::string context(const KeyValueEntry& e) const {
        return origin_ + ":" + std::to_string(e.line) + ": key `" + e.key + "`";
    }

    double real(const KeyValueEntry& e) const {
        double v = 0.0;
        if (!detail::parse_real(e.value, v) || !std::isfinite(v))
            throw ParseError(context(e) + ": expected a finite real, got `" + e.value + "`");
        return v;
    }

    std::vector<double> reals(const KeyValueEntry& e) const {
        std::vector<double> out;
        for (auto token : detail::split(e.value, ',')) {
            double v = 0.0;
            if (!detail::parse_real(token, v) || !std::isfinite(v))
                throw ParseError(context(e) + ": expected comma-separated reals, got `" + e.value + "`");
            out.push_back(v);
        }
        return out;
    }

    std::vector<int> integers(const KeyValueEntry& e) const {
        std::vector<int> out;
        for (auto token : detail::split(e.value, ',')) {
            long v = 0;
            if (!detail::parse_int(token, v))
                throw ParseError(context(e) + ": expected comma-separated integers, got `" + e.value + "`");
            out.push_back(static_cast<int>(v));
        }
        return out;
    }

private:
    std::string origin_;
    std::vector<KeyValueEntry> entries_;
};

} // namespace qpmspdc
