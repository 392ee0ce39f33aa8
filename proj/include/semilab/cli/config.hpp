#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semilab/numeric/complex_matrix.hpp"
#include "semilab/volterra/kernel.hpp"

namespace semilab::cli {

using numeric::cplx;
using numeric::rvec;

enum class Scenario {
    HeatExample,
    ResolventScan,
    Admissibility,
    RieszProbe,
    Compactness,
    VcfCheck,
    Volterra,
    FullReport,
};

std::string to_string(Scenario s);
std::optional<Scenario> scenario_from_string(const std::string& name);

/// True when the scenario runs sampled probes and therefore requires a seed.
bool scenario_needs_seed(Scenario s);

/// Parsed and validated run manifest (JSON, schema_version 1).
struct RunConfig {
    int schema_version = 1;
    Scenario scenario = Scenario::HeatExample;
    std::size_t n = 100;
    double p = 2.0;
    std::uint64_t seed = 0;
    bool seed_given = false;

    double t_max = 0.5;
    std::size_t steps = 400;

    double mu = 1.0;
    double tau_max = 1e4;
    std::size_t points = 40;

    rvec tau_grid{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
    rvec h_list{0.2, 0.1, 0.05, 0.025};

    std::vector<volterra::ExpPolyKernel::Term> kernel_terms{{cplx{1.0, 0.0}, 0, cplx{1.0, 0.0}}};
    double sector_a = 1.0;
    double sector_beta = 1.0;
    double sector_s = 1.5;

    std::string output_dir = "out";
    bool emit_plots = true;
    int verbosity = 0;
};

/// Throws std::invalid_argument with a reason on any validation failure.
RunConfig parse_config(const std::string& json_text);

} // namespace semilab::cli
