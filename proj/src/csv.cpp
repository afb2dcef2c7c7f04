#include "wprelay/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wpr::csv {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<std::string> config_comments(const model::NetworkConfig& config,
                                         const sim::SimConfig& sim,
                                         std::optional<double> mu) {
    std::vector<std::string> lines;
    lines.push_back(std::string("wprelay ") + kToolVersion);
    lines.push_back(
        "convention: power given in dB is converted at the CLI boundary as "
        "P_linear = 10^(dB/10) * noise");
    lines.push_back(
        "config: lambda=" + format_double(config.lambda) +
        " rho=" + format_double(config.rho) +
        " alpha=" + format_double(config.alpha) +
        " power=" + format_double(config.power) +
        " psi=" + format_double(config.psi) +
        " noise=" + format_double(config.noise) +
        " rate=" + format_double(config.rate) +
        " d0=" + format_double(config.d0) +
        " zeta=" + format_double(config.zeta));
    lines.push_back(
        "sim: seed=" + std::to_string(sim.seed) +
        " burn_in_slots=" + std::to_string(sim.burn_in_slots) +
        " measure_slots=" + std::to_string(sim.measure_slots) +
        " topology_draws=" + std::to_string(sim.topology_draws) +
        " threads=" + std::to_string(sim.threads) +
        " redraw_topology_each_slot=" +
        (sim.redraw_topology_each_slot ? "1" : "0") +
        " exact_relay_dest_distance=" +
        (sim.exact_relay_dest_distance ? "1" : "0"));
    if (mu) {
        lines.push_back("multicell: mu=" + format_double(*mu) +
                        " (cell radius rho = 1/(4*sqrt(mu)), d0 = rho)");
    }
    return lines;
}

std::string render(const std::vector<std::string>& comments,
                   const std::vector<Row>& rows) {
    std::string out;
    for (const auto& c : comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    out += "parameter,scheme,mode,value,stderr,trials\n";
    for (const auto& row : rows) {
        out += row.parameter;
        out += ',';
        out += row.scheme;
        out += ',';
        out += row.mode;
        out += ',';
        out += format_double(row.value);
        out += ',';
        if (row.std_error) out += format_double(*row.std_error);
        out += ',';
        if (row.trials) out += std::to_string(*row.trials);
        out += '\n';
        if (!row.error.empty()) {
            out += "# error: ";
            out += row.error;
            out += '\n';
        }
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

} // namespace wpr::csv
