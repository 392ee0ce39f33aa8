#include "semilab/cli/config.hpp"

#include <json.hpp>

namespace semilab::cli {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::HeatExample: return "heat-example";
        case Scenario::ResolventScan: return "resolvent-scan";
        case Scenario::Admissibility: return "admissibility";
        case Scenario::RieszProbe: return "riesz-probe";
        case Scenario::Compactness: return "compactness";
        case Scenario::VcfCheck: return "vcf-check";
        case Scenario::Volterra: return "volterra";
        case Scenario::FullReport: return "full-report";
    }
    return "unknown";
}

std::optional<Scenario> scenario_from_string(const std::string& name) {
    for (Scenario s : {Scenario::HeatExample, Scenario::ResolventScan, Scenario::Admissibility,
                       Scenario::RieszProbe, Scenario::Compactness, Scenario::VcfCheck,
                       Scenario::Volterra, Scenario::FullReport}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

bool scenario_needs_seed(Scenario s) {
    switch (s) {
        case Scenario::RieszProbe:
        case Scenario::Admissibility:
        case Scenario::Volterra:
        case Scenario::FullReport:
            return true;
        default:
            return false;
    }
}

namespace {

[[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("config: " + why);
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("not valid JSON (") + e.what() + ")");
    }

    RunConfig cfg;
    if (!j.contains("scenario")) fail("missing 'scenario'");
    const auto sc = scenario_from_string(j.at("scenario").get<std::string>());
    if (!sc) fail("unknown scenario '" + j.at("scenario").get<std::string>() + "'");
    cfg.scenario = *sc;

    if (j.contains("schema_version")) cfg.schema_version = j.at("schema_version").get<int>();
    if (cfg.schema_version != 1) fail("unsupported schema_version");

    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (cfg.n < 8) fail("n must be at least 8");
    if (j.contains("p")) cfg.p = j.at("p").get<double>();
    if (!(cfg.p > 1.0)) fail("p must exceed 1");

    if (j.contains("seed")) {
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.seed_given = true;
    }
    if (scenario_needs_seed(cfg.scenario) && !cfg.seed_given) {
        fail("scenario '" + to_string(cfg.scenario) + "' runs sampled probes and needs a seed");
    }

    if (j.contains("time")) {
        const auto& t = j.at("time");
        if (t.contains("t_max")) cfg.t_max = t.at("t_max").get<double>();
        if (t.contains("steps")) cfg.steps = t.at("steps").get<std::size_t>();
    }
    if (!(cfg.t_max > 0.0) || cfg.steps < 2) fail("time grid needs t_max > 0 and steps >= 2");

    if (j.contains("frequency")) {
        const auto& f = j.at("frequency");
        if (f.contains("mu")) cfg.mu = f.at("mu").get<double>();
        if (f.contains("tau_max")) cfg.tau_max = f.at("tau_max").get<double>();
        if (f.contains("points")) cfg.points = f.at("points").get<std::size_t>();
    }
    if (!(cfg.tau_max > 1.0) || cfg.points < 4) fail("frequency grid needs tau_max > 1, points >= 4");

    if (j.contains("tau_grid")) cfg.tau_grid = j.at("tau_grid").get<rvec>();
    if (cfg.tau_grid.empty()) fail("tau_grid must not be empty");
    for (double t : cfg.tau_grid) {
        if (!(t > 0.0)) fail("tau_grid entries must be positive");
    }

    if (j.contains("h_list")) cfg.h_list = j.at("h_list").get<rvec>();
    for (double h : cfg.h_list) {
        if (!(h > 0.0)) fail("h_list entries must be positive");
    }

    if (j.contains("kernel")) {
        cfg.kernel_terms.clear();
        for (const auto& term : j.at("kernel")) {
            volterra::ExpPolyKernel::Term t;
            const auto& c = term.at("c");
            t.c = cplx{c.at(0).get<double>(), c.at(1).get<double>()};
            t.m = term.at("m").get<unsigned>();
            const auto& a = term.at("a");
            t.a = cplx{a.at(0).get<double>(), a.at(1).get<double>()};
            if (!(t.a.real() > 0.0)) fail("kernel term needs Re a > 0");
            cfg.kernel_terms.push_back(t);
        }
        if (cfg.kernel_terms.empty()) fail("kernel must have at least one term");
    }

    if (j.contains("sector")) {
        const auto& s = j.at("sector");
        if (s.contains("a")) cfg.sector_a = s.at("a").get<double>();
        if (s.contains("beta")) cfg.sector_beta = s.at("beta").get<double>();
        if (s.contains("s")) cfg.sector_s = s.at("s").get<double>();
    }
    // SectorProfile re-validates; report bad combinations as config errors.
    try {
        volterra::SectorProfile probe(cfg.sector_a, cfg.sector_beta, cfg.sector_s, cfg.p);
    } catch (const std::exception& e) {
        fail(std::string("sector: ") + e.what());
    }

    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (cfg.output_dir.empty()) fail("output_dir must not be empty");
    if (j.contains("emit_plots")) cfg.emit_plots = j.at("emit_plots").get<bool>();
    if (j.contains("verbosity")) cfg.verbosity = j.at("verbosity").get<int>();
    return cfg;
}

} // namespace semilab::cli
