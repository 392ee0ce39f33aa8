#pragma once

#include <filesystem>
#include <string>

#include "semilab/cli/config.hpp"

namespace semilab::cli {

/// Executes the scenario, writing per-scenario CSV tables, a summary JSON
/// (schema documented in docs/summary_schema.md) and optional gnuplot
/// scripts into cfg.output_dir.
///
/// Exit status: 0 on success (all files written, checks evaluated), 2 on a
/// numerical failure (summary JSON names the failing operation). Config
/// validation errors are thrown by parse_config before any file is written
/// and map to exit status 1 in the CLI driver.
int run(const RunConfig& cfg);

/// Structural validation of a summary document against the in-repo schema.
bool validate_summary(const std::string& json_text, std::string* why = nullptr);

} // namespace semilab::cli
