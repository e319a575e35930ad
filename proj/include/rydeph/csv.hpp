#pragma once

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rydeph/errors.hpp"

namespace rydeph {

// Shortest round-trip decimal form, locale independent; identical bytes for
// identical doubles.
inline std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw ConfigError("csv: missing column '" + name + "'");
    }
};

inline void write_csv_row(std::ostream& os, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ',';
        os << format_double(values[i]);
    }
    os << '\n';
}

inline void write_csv_header(std::ostream& os, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) os << ',';
        os << names[i];
    }
    os << '\n';
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

}

// Reads a numeric CSV with one header row. Blank lines and lines starting
// with '#' are skipped.
inline CsvTable read_csv(std::istream& is, const std::string& origin) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        if (!have_header) {
            table.header = detail::split_csv_line(stripped);
            have_header = true;
            continue;
        }
        const auto fields = detail::split_csv_line(stripped);
        if (fields.size() != table.header.size())
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected " + std::to_string(table.header.size()) + " fields");
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            char* end = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (end == f.c_str() || *end != '\0')
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": not a number: '" + f + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ConfigError(origin + ": empty file");
    return table;
}

inline CsvTable read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open '" + path + "'");
    return read_csv(f, path);
}

}
