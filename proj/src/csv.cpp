#include "stratlab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stratlab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// quote a cell only when it contains a delimiter, quote, or newline
std::string escape_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void csv_write(const std::string& path, const CsvTable& table) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j) os << ',';
        os << escape_cell(table.header[j]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ',';
            os << escape_cell(row[j]);
        }
        os << '\n';
    }
    if (!os) throw std::runtime_error("write to " + path + " failed");
}

// Character-level parse so quoted cells may hold delimiters and newlines;
// empty records (blank lines) are skipped.
CsvTable csv_read(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    const std::string text((std::istreambuf_iterator<char>(is)),
                           std::istreambuf_iterator<char>());

    CsvTable table;
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    bool first = true;
    auto flush_record = [&]() {
        if (cells.empty() && cur.empty()) return;
        cells.push_back(cur);
        cur.clear();
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
        cells.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            flush_record();
        } else {
            cur += c;
        }
    }
    flush_record();
    return table;
}

std::vector<std::string> csv_numeric_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_g17(v));
    return row;
}

}  // namespace stratlab
