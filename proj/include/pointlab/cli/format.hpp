#pragma once

#include <string>
#include <vector>

namespace pointlab::cli {

/// Scientific notation with 17 significant digits ("%.16e"); "inf", "-inf", "nan" otherwise.
std::string format_number(double v);

/// Comma-separated table with a header row and LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> cells);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace pointlab::cli
