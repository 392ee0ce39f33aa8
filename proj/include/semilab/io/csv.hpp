#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "semilab/semigroup/grid.hpp"

namespace semilab::io {

/// Column-oriented CSV writer with %.17g formatting (stable round-trip and
/// byte-identical re-runs for identical inputs).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void write(const std::filesystem::path& path) const;
};

/// Signal export: columns t, re_k, im_k per channel.
void write_signal_csv(const std::filesystem::path& path,
                      const semigroup::SignalSamples& samples);

/// Header row of an existing CSV (empty if the file is missing or empty).
std::vector<std::string> read_csv_header(const std::filesystem::path& path);

std::string format_double(double v);

} // namespace semilab::io
