#pragma once
// CSV emission. One fixed column set for every subcommand so downstream
// plotting never has to branch: parameter,scheme,mode,value,stderr,trials.
// Header comments record the tool version and the full run configuration,
// including the dB-to-linear power convention applied at the CLI boundary.

#include "wprelay/model/config.hpp"
#include "wprelay/sim/engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wpr::csv {

inline constexpr char kToolVersion[] = "1.0.0";

struct Row {
    std::string parameter;  // e.g. "power_db=30" or a quantity name
    std::string scheme;     // empty when not scheme-specific
    std::string mode;       // analytic | simulated | asymptotic
    double value = 0.0;     // NaN when `error` is set
    std::optional<double> std_error;
    std::optional<long long> trials;
    std::string error;      // nonempty: surfaced as a comment after the row
};

// Shortest round-trip-safe decimal form (%.17g).
std::string format_double(double value);

// Comment block describing a run: tool version, dB convention, network
// config, simulator config, and the multi-cell density when applicable.
std::vector<std::string> config_comments(const model::NetworkConfig& config,
                                         const sim::SimConfig& sim,
                                         std::optional<double> mu);

// Full document: "# " comments, header line, data rows. None of the fields
// emitted by this tool contain commas, so no quoting is done.
std::string render(const std::vector<std::string>& comments,
                   const std::vector<Row>& rows);

// Throws std::runtime_error if the file cannot be written.
void write_file(const std::string& path, const std::string& content);

} // namespace wpr::csv
