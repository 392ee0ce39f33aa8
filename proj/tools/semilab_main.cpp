#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "semilab/boundary/triple.hpp"
#include "semilab/cli/config.hpp"
#include "semilab/cli/runner.hpp"
#include "semilab/io/plot.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semilab: boundary-perturbed semigroup laboratory"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run a scenario from a config manifest");
    std::string config_path;
    std::string output_dir_override;
    std::int64_t seed_override = -1;
    int verbosity = 0;
    run_cmd->add_option("-c,--config", config_path, "config JSON path")->required();
    run_cmd->add_option("-o,--output-dir", output_dir_override, "override output directory");
    run_cmd->add_option("-s,--seed", seed_override, "override the config seed");
    run_cmd->add_flag("-v,--verbose", verbosity, "print per-check results");

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "emit a gnuplot script for existing CSVs");
    std::vector<std::string> csvs;
    std::string kind = "linear";
    std::string plot_out = "plot.gp";
    plot_cmd->add_option("--csv", csvs, "input CSV files")->required();
    plot_cmd->add_option("--kind", kind, "loglog | semilogy | linear");
    plot_cmd->add_option("--out", plot_out, "script path");

    // triple
    auto* triple_cmd = app.add_subcommand("triple", "serialize a heat triple to JSON");
    std::size_t triple_n = 64;
    std::string triple_in;
    std::string triple_out = "triple.json";
    triple_cmd->add_option("--n", triple_n, "interior grid size");
    triple_cmd->add_option("--in", triple_in, "read an existing triple JSON instead");
    triple_cmd->add_option("--out", triple_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            semilab::cli::RunConfig cfg = semilab::cli::parse_config(slurp(config_path));
            if (!output_dir_override.empty()) cfg.output_dir = output_dir_override;
            if (seed_override >= 0) {
                cfg.seed = static_cast<std::uint64_t>(seed_override);
                cfg.seed_given = true;
            }
            cfg.verbosity += verbosity;
            return semilab::cli::run(cfg);
        }
        if (*plot_cmd) {
            semilab::io::PlotKind pk;
            if (kind == "loglog") pk = semilab::io::PlotKind::LogLog;
            else if (kind == "semilogy") pk = semilab::io::PlotKind::SemiLogY;
            else if (kind == "linear") pk = semilab::io::PlotKind::Linear;
            else throw std::invalid_argument("unknown plot kind '" + kind + "'");
            std::vector<std::filesystem::path> paths(csvs.begin(), csvs.end());
            semilab::io::emit_plot_script(paths, pk, plot_out);
            return 0;
        }
        if (*triple_cmd) {
            semilab::boundary::BoundaryTriple t =
                triple_in.empty() ? semilab::boundary::build_heat_triple(triple_n)
                                  : semilab::boundary::triple_from_json(slurp(triple_in));
            std::ofstream out(triple_out);
            if (!out) throw std::invalid_argument("cannot open " + triple_out);
            out << semilab::boundary::triple_to_json(t) << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
