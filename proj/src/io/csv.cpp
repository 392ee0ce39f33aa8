#include "semilab/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace semilab::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvTable::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("CsvTable: cannot open " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_double(row[i]);
        }
        out << "\n";
    }
}

void write_signal_csv(const std::filesystem::path& path,
                      const semigroup::SignalSamples& samples) {
    CsvTable table;
    table.header.push_back("t");
    for (std::size_t c = 0; c < samples.channels(); ++c) {
        table.header.push_back("re_" + std::to_string(c));
        table.header.push_back("im_" + std::to_string(c));
    }
    for (std::size_t i = 0; i < samples.values.size(); ++i) {
        std::vector<double> row;
        row.push_back(samples.grid.time(i));
        for (const auto& z : samples.values[i]) {
            row.push_back(z.real());
            row.push_back(z.imag());
        }
        table.rows.push_back(std::move(row));
    }
    table.write(path);
}

std::vector<std::string> read_csv_header(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string line;
    if (!in || !std::getline(in, line)) return {};
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) cols.push_back(field);
    return cols;
}

} // namespace semilab::io
