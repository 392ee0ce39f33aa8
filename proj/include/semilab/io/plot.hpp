#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace semilab::io {

enum class PlotKind { LogLog, SemiLogY, Linear };

/// Writes a gnuplot script plotting column 2.. against column 1 of each CSV.
/// No plotting happens in-process. Throws MissingColumn when the list is
/// empty or a CSV has fewer than two columns.
void emit_plot_script(const std::vector<std::filesystem::path>& csv_paths, PlotKind kind,
                      const std::filesystem::path& out_path);

} // namespace semilab::io
