#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "semilab/cli/config.hpp"
#include "semilab/cli/runner.hpp"
#include "semilab/io/csv.hpp"
#include "semilab/io/plot.hpp"
#include "semilab/semigroup/grid.hpp"

using namespace semilab;
using namespace semilab::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("semilab_test_" + name);
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("config parsing and validation") {
    RunConfig cfg = parse_config(R"({"scenario": "vcf-check", "n": 64})");
    CHECK(cfg.scenario == Scenario::VcfCheck);
    CHECK(cfg.n == 64);
    CHECK(cfg.p == 2.0);

    CHECK_THROWS_AS(parse_config("{"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"scenario": "no-such"})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"scenario": "vcf-check", "n": 4})"), std::invalid_argument);
    // sampled probes demand a seed
    CHECK_THROWS_AS(parse_config(R"({"scenario": "riesz-probe"})"), std::invalid_argument);
    CHECK_NOTHROW(parse_config(R"({"scenario": "riesz-probe", "seed": 7})"));
    CHECK_THROWS_AS(parse_config(R"({"scenario": "vcf-check", "p": 1.0})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_config(R"({"scenario": "volterra", "seed": 1, "kernel": [{"c": [1,0], "m": 0, "a": [-1,0]}]})"),
        std::invalid_argument);
}

TEST_CASE("csv writer and plot scripts") {
    const fs::path dir = fresh_dir("csv");
    fs::create_directories(dir);
    io::CsvTable t;
    t.header = {"x", "y"};
    t.rows = {{1.0, 2.0}, {3.0, 0.125}};
    t.write(dir / "t.csv");
    CHECK(io::read_csv_header(dir / "t.csv") == std::vector<std::string>{"x", "y"});

    io::emit_plot_script({dir / "t.csv"}, io::PlotKind::LogLog, dir / "p.gp");
    const std::string script = slurp(dir / "p.gp");
    CHECK(script.find("set logscale xy") != std::string::npos);
    CHECK(script.find("t.csv") != std::string::npos);

    CHECK_THROWS_AS(io::emit_plot_script({}, io::PlotKind::Linear, dir / "q.gp"),
                    MissingColumn);
    io::CsvTable one;
    one.header = {"only"};
    one.write(dir / "one.csv");
    CHECK_THROWS_AS(io::emit_plot_script({dir / "one.csv"}, io::PlotKind::Linear, dir / "q.gp"),
                    MissingColumn);
}

TEST_CASE("vcf scenario runs and validates its summary") {
    const fs::path dir = fresh_dir("vcf");
    RunConfig cfg = parse_config(R"({"scenario": "vcf-check", "n": 60,
                                     "time": {"t_max": 0.5, "steps": 200}})");
    cfg.output_dir = dir.string();
    CHECK(run(cfg) == 0);
    const std::string summary = slurp(dir / "summary.json");
    std::string why;
    CHECK_MESSAGE(validate_summary(summary, &why), why);
    CHECK(summary.find("\"status\": \"ok\"") != std::string::npos);
    CHECK(summary.find("vcf_residual") != std::string::npos);
    CHECK(fs::exists(dir / "vcf.csv"));
}

TEST_CASE("numerical failures exit 2 and name the failing operation") {
    const fs::path dir = fresh_dir("fail");
    // mu below the perturbed growth bound trips the scan
    RunConfig cfg = parse_config(R"({"scenario": "resolvent-scan", "n": 32,
                                     "frequency": {"mu": -5.0, "tau_max": 100.0, "points": 8}})");
    cfg.output_dir = dir.string();
    CHECK(run(cfg) == 2);
    const std::string summary = slurp(dir / "summary.json");
    CHECK(summary.find("numerical-failure") != std::string::npos);
    CHECK(summary.find("failed_operation") != std::string::npos);
    CHECK(summary.find("norm_continuity_scan") != std::string::npos);
}

TEST_CASE("identical configs reproduce byte-identical CSV bodies") {
    RunConfig cfg = parse_config(R"({"scenario": "riesz-probe", "n": 24, "seed": 77,
                                     "time": {"t_max": 0.5, "steps": 100},
                                     "h_list": [0.2, 0.1, 0.05]})");
    const fs::path d1 = fresh_dir("det1");
    const fs::path d2 = fresh_dir("det2");
    cfg.output_dir = d1.string();
    REQUIRE(run(cfg) == 0);
    cfg.output_dir = d2.string();
    REQUIRE(run(cfg) == 0);
    CHECK(slurp(d1 / "riesz.csv") == slurp(d2 / "riesz.csv"));
    CHECK(slurp(d1 / "riesz.csv").size() > 0);
}

TEST_CASE("signal csv layout") {
    const fs::path dir = fresh_dir("signal");
    fs::create_directories(dir);
    semigroup::SignalSamples s(semigroup::TimeGrid(1.0, 2), 2);
    s.values[1][0] = numeric::cplx{1.5, -0.5};
    io::write_signal_csv(dir / "s.csv", s);
    const auto header = io::read_csv_header(dir / "s.csv");
    CHECK(header == std::vector<std::string>{"t", "re_0", "im_0", "re_1", "im_1"});
}
