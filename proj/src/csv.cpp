#include "mzrecoil/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mzr {

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw contract_error("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += format(values[i]);
    }
    buffer_ += '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw contract_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("out", "cannot open '" + path + "' for writing");
    out << buffer_;
    if (!out) throw config_error("out", "write failed for '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("overlay", "cannot open '" + path + "'");
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (lineno == 1) {
            t.header = cells;
            width = cells.size();
            continue;
        }
        if (cells.size() != width)
            throw config_error("csv", "line " + std::to_string(lineno) + ": expected " +
                                          std::to_string(width) + " columns, got " +
                                          std::to_string(cells.size()));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

} // namespace mzr
