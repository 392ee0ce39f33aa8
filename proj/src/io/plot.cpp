#include "semilab/io/plot.hpp"

#include <fstream>

#include "semilab/errors.hpp"
#include "semilab/io/csv.hpp"

namespace semilab::io {

void emit_plot_script(const std::vector<std::filesystem::path>& csv_paths, PlotKind kind,
                      const std::filesystem::path& out_path) {
    if (csv_paths.empty()) throw MissingColumn("emit_plot_script: no CSV files given");

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("emit_plot_script: cannot open " + out_path.string());
    out << "# gnuplot script\n";
    out << "set datafile separator ','\n";
    out << "set key autotitle columnhead\n";
    switch (kind) {
        case PlotKind::LogLog: out << "set logscale xy\n"; break;
        case PlotKind::SemiLogY: out << "set logscale y\n"; break;
        case PlotKind::Linear: break;
    }
    out << "plot ";
    bool first = true;
    for (const auto& path : csv_paths) {
        const auto header = read_csv_header(path);
        if (header.size() < 2) {
            throw MissingColumn("emit_plot_script: " + path.string() +
                                " lacks a value column");
        }
        for (std::size_t col = 2; col <= header.size(); ++col) {
            if (!first) out << ", \\\n     ";
            out << "'" << path.filename().string() << "' using 1:" << col << " with lines";
            first = false;
        }
    }
    out << "\n";
}

} // namespace semilab::io
