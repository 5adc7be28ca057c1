#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "incomesim/errors.hpp"

namespace incomesim::csv {

struct Table {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // data rows, cells as written

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw MissingColumn("missing column '" + name + "' in " + path);
    }
};

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    for (char c : line) {
        if (c == ',') { out.push_back(cell); cell.clear(); }
        else if (c != '\r') cell.push_back(c);
    }
    out.push_back(cell);
    return out;
}

inline Table read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidData("cannot open " + path);
    Table t;
    t.path = path;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split_line(line);
        if (first) { t.header = std::move(cells); first = false; }
        else t.rows.push_back(std::move(cells));
    }
    if (first) throw InvalidData("empty file " + path);
    return t;
}

inline double parse_double(const std::string& s, const std::string& ctx) {
    double v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw InvalidData("bad number '" + s + "' (" + ctx + ")");
    return v;
}

inline long parse_int(const std::string& s, const std::string& ctx) {
    long v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw InvalidData("bad integer '" + s + "' (" + ctx + ")");
    return v;
}

inline std::optional<double> parse_optional(const std::string& s, const std::string& ctx) {
    if (s.empty()) return std::nullopt;
    return parse_double(s, ctx);
}

/// Shortest round-trip representation of a double.
inline std::string num(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

/// Fixed six decimal places, the format of all CLI-emitted tables.
inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidData("cannot write " + path);
    out << content;
}

} // namespace incomesim::csv
