#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eitlab::io {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Twelve significant digits, C locale.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const {
        for (std::size_t k = 0; k < header.size(); ++k)
            if (header[k] == name) return k;
        throw IoError("csv: no column named '" + name + "'");
    }

    [[nodiscard]] double number(std::size_t row, std::size_t col) const {
        const std::string& cell = rows.at(row).at(col);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != cell.size()) throw IoError("csv: '" + cell + "' is not a number");
        return v;
    }

    [[nodiscard]] std::vector<double> numbers(const std::string& name) const {
        const std::size_t col = column(name);
        std::vector<double> out(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) out[r] = number(r, col);
        return out;
    }
};

/// Cells are written verbatim; they must not contain commas or newlines.
inline std::string to_csv(const CsvTable& table) {
    auto line = [](std::ostringstream& os, const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (cells[k].find_first_of(",\n\r") != std::string::npos)
                throw IoError("csv: cell contains a separator: " + cells[k]);
            if (k) os << ',';
            os << cells[k];
        }
        os << '\n';
    };
    std::ostringstream os;
    line(os, table.header);
    for (const auto& r : table.rows) {
        if (r.size() != table.header.size()) throw IoError("csv: row width differs from header");
        line(os, r);
    }
    return os.str();
}

inline CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != table.header.size()) throw IoError("csv: row width differs from header");
            table.rows.push_back(std::move(cells));
        }
    }
    if (first) throw IoError("csv: missing header");
    return table;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os) throw IoError("failed writing " + path.string());
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

inline void write_csv(const std::filesystem::path& path, const CsvTable& table) { write_text(path, to_csv(table)); }

inline CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

}  // namespace eitlab::io
