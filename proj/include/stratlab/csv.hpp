// CSV emission/parsing: header row, dot decimal, 17-significant-digit
// floats (lossless double round-trip).

#pragma once

#include <string>
#include <vector>

namespace stratlab {

std::string format_g17(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void csv_write(const std::string& path, const CsvTable& table);
CsvTable csv_read(const std::string& path);

// convenience: numeric row -> formatted strings
std::vector<std::string> csv_numeric_row(const std::vector<double>& values);

}  // namespace stratlab
