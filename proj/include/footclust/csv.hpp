#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "footclust/error.hpp"
#include "footclust/stats.hpp"

namespace footclust::csv {

/// A parsed CSV file: header plus rows of raw cells. Supports RFC 4180 quoting.
struct Table {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        return std::nullopt;
    }

    std::size_t require_column(std::string_view name) const {
        auto c = column(name);
        if (!c) throw DataError(path + ": missing column '" + std::string(name) + "'");
        return *c;
    }
};

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

inline Table read(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DataError("cannot open file: " + path);
    Table t;
    t.path = path;
    std::string line;
    bool have_header = false;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_line(line);
        if (!have_header) {
            // strip a UTF-8 byte order mark
            if (cells[0].size() >= 3 && cells[0].compare(0, 3, "\xEF\xBB\xBF") == 0) cells[0].erase(0, 3);
            t.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size())
            throw DataError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                            " cells, found " + std::to_string(cells.size()));
        t.rows.push_back(std::move(cells));
    }
    if (!have_header) throw DataError(path + ": empty file");
    return t;
}

/// Parses a numeric cell; empty means missing (NaN).
inline double parse_number(std::string_view cell, const std::string& where) {
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
    if (cell.empty() || cell == "NA") return kMissing;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw DataError(where + ": not a number: '" + std::string(cell) + "'");
    return v;
}

inline std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

/// Shortest round-trip representation; empty for missing values.
inline std::string format_number(double v) {
    if (is_missing(v)) return "";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace footclust::csv
