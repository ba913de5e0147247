#include "pointlab/cli/format.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pointlab::cli {

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != header_.size()) throw std::logic_error("csv row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

}  // namespace pointlab::cli
