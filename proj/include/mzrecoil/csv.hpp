#pragma once
#include <string>
#include <vector>

#include "mzrecoil/errors.hpp"

namespace mzr {

// Deterministic CSV writer: fixed "%.12g" formatting, '\n' line ends.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);
    const std::string& str() const { return buffer_; }
    void save(const std::string& path) const;
    static std::string format(double v);

private:
    std::size_t columns_;
    std::string buffer_;
};

// Minimal CSV reader; reports 1-based line numbers on malformed input.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(const std::string& path);

} // namespace mzr
