// Command-line front end. Subcommands: steady-state, outage, sweep,
// multicell, validate. All numeric output is CSV with one fixed column set;
// power is taken in dB here and converted once at this boundary
// (P_linear = 10^(dB/10) * noise). A config file of key=value lines seeds
// the defaults; explicit flags win.

#include "wprelay/battery/steady_state.hpp"
#include "wprelay/csv.hpp"
#include "wprelay/errors.hpp"
#include "wprelay/model/config.hpp"
#include "wprelay/outage/estimate.hpp"
#include "wprelay/outage/multicell.hpp"
#include "wprelay/outage/single_cell.hpp"
#include "wprelay/sim/engine.hpp"
#include "wprelay/sim/multicell.hpp"
#include "wprelay/sweep.hpp"
#include "wprelay/validate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using wpr::csv::format_double;

struct CommonOpts {
    double lambda = 1.0;
    double rho = 3.0;
    double alpha = 3.0;
    double power_db = 30.0;
    double psi = 0.1;
    double noise = 1.0;
    double rate = 0.01;
    double d0 = 6.0;
    double zeta = 1.0;
    double mu = 0.005;
    std::uint64_t seed = 1;
    long long slots = 5000;
    int draws = 200;
    long long burn_in = -1;  // negative: pick automatically
    int threads = 1;
    bool exact_dest = false;
    bool quenched = false;
    std::string out;
    std::string config_path;
};

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    const auto a = s.find_first_not_of(ws);
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
}

struct ConfigEntry {
    std::string value;
    int line = 0; // for error messages
};

std::map<std::string, ConfigEntry> read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, ConfigEntry> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        kv[key] = {value, lineno};
    }
    return kv;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size())
        throw std::runtime_error("config key " + key + ": bad number '" + v + "'");
    return x;
}

long long to_ll(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size())
        throw std::runtime_error("config key " + key + ": bad integer '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw std::runtime_error("config key " + key + ": bad boolean '" + v + "'");
}

void apply_config(const std::map<std::string, ConfigEntry>& kv, const std::string& path,
                  CommonOpts& o) {
    for (const auto& [k, entry] : kv) {
        const std::string& v = entry.value;
        if (k == "lambda") o.lambda = to_double(k, v);
        else if (k == "rho") o.rho = to_double(k, v);
        else if (k == "alpha") o.alpha = to_double(k, v);
        else if (k == "power_db") o.power_db = to_double(k, v);
        else if (k == "psi") o.psi = to_double(k, v);
        else if (k == "noise") o.noise = to_double(k, v);
        else if (k == "rate") o.rate = to_double(k, v);
        else if (k == "d0") o.d0 = to_double(k, v);
        else if (k == "zeta") o.zeta = to_double(k, v);
        else if (k == "mu") o.mu = to_double(k, v);
        else if (k == "seed") o.seed = static_cast<std::uint64_t>(to_ll(k, v));
        else if (k == "slots") o.slots = to_ll(k, v);
        else if (k == "draws") o.draws = static_cast<int>(to_ll(k, v));
        else if (k == "burn_in") o.burn_in = to_ll(k, v);
        else if (k == "threads") o.threads = static_cast<int>(to_ll(k, v));
        else if (k == "exact_dest_distance") o.exact_dest = to_bool(k, v);
        else if (k == "quenched") o.quenched = to_bool(k, v);
        else
            throw std::runtime_error(path + ":" + std::to_string(entry.line) +
                                     ": unknown config key: " + k);
    }
}

wpr::model::NetworkConfig to_network(const CommonOpts& o) {
    wpr::model::NetworkConfig c;
    c.lambda = o.lambda;
    c.rho = o.rho;
    c.alpha = o.alpha;
    c.power = std::pow(10.0, o.power_db / 10.0) * o.noise;
    c.psi = o.psi;
    c.noise = o.noise;
    c.rate = o.rate;
    c.d0 = o.d0;
    c.zeta = o.zeta;
    return c;
}

wpr::sim::SimConfig to_sim(const CommonOpts& o, const wpr::model::NetworkConfig& cfg) {
    wpr::sim::SimConfig s;
    s.seed = o.seed;
    s.measure_slots = o.slots;
    s.topology_draws = o.draws;
    s.burn_in_slots = o.burn_in >= 0 ? o.burn_in : wpr::sim::recommended_burn_in(cfg);
    s.exact_relay_dest_distance = o.exact_dest;
    s.redraw_topology_each_slot = !o.quenched;
    s.threads = o.threads;
    return s;
}

std::vector<wpr::model::SchemeId> parse_schemes(const std::vector<std::string>& names,
                                                bool multicell) {
    std::vector<wpr::model::SchemeId> out;
    if (names.empty()) {
        for (auto s : wpr::model::kAllSchemes) {
            if (multicell && s == wpr::model::SchemeId::DB) continue;
            out.push_back(s);
        }
        return out;
    }
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(wpr::model::scheme_from_name(n));
    return out;
}

std::vector<wpr::outage::EstimateMode> parse_modes(const std::vector<std::string>& names) {
    std::vector<wpr::outage::EstimateMode> out;
    if (names.empty()) return {wpr::outage::EstimateMode::analytic};
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(wpr::outage::mode_from_name(n));
    return out;
}

void emit(const CommonOpts& o, const std::string& content) {
    if (o.out.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
    } else {
        wpr::csv::write_file(o.out, content);
    }
}

wpr::csv::Row estimate_row(std::string parameter, const wpr::outage::OutageEstimate& e) {
    wpr::csv::Row row;
    row.parameter = std::move(parameter);
    row.scheme = wpr::model::scheme_name(e.scheme);
    row.mode = wpr::outage::mode_name(e.mode);
    row.value = e.value;
    row.std_error = e.std_error;
    row.trials = e.trials;
    return row;
}

int run_outage(const CommonOpts& o, const std::vector<std::string>& scheme_names,
               const std::vector<std::string>& mode_names, bool multicell,
               const char* command) {
    const auto schemes = parse_schemes(scheme_names, multicell);
    const auto modes = parse_modes(mode_names);
    wpr::model::NetworkConfig cfg = to_network(o);
    std::optional<double> mu;
    std::optional<wpr::model::MultiCellConfig> mc;
    if (multicell) {
        mc = wpr::model::make_multicell(cfg, o.mu);
        cfg = mc->base;  // rho and d0 are derived from mu
        mu = o.mu;
    }
    const wpr::sim::SimConfig sim = to_sim(o, cfg);

    std::vector<std::string> comments = {std::string("command: ") + command};
    auto cc = wpr::csv::config_comments(cfg, sim, mu);
    comments.insert(comments.end(), cc.begin(), cc.end());

    const std::string parameter = "power_db=" + format_double(o.power_db);
    std::vector<wpr::csv::Row> rows;
    for (auto scheme : schemes) {
        for (auto mode : modes) {
            wpr::outage::OutageEstimate est;
            if (multicell) {
                switch (mode) {
                    case wpr::outage::EstimateMode::analytic:
                        est = wpr::outage::outage_multicell(scheme, *mc);
                        break;
                    case wpr::outage::EstimateMode::asymptotic:
                        est = wpr::outage::outage_multicell_floor(scheme, *mc);
                        break;
                    case wpr::outage::EstimateMode::simulated:
                        est = wpr::sim::estimate_outage_multicell(scheme, *mc, sim);
                        break;
                }
            } else {
                switch (mode) {
                    case wpr::outage::EstimateMode::analytic:
                        est = wpr::outage::outage(scheme, cfg);
                        break;
                    case wpr::outage::EstimateMode::asymptotic:
                        est = wpr::outage::outage_floor(scheme, cfg);
                        break;
                    case wpr::outage::EstimateMode::simulated:
                        est = wpr::sim::estimate_outage(scheme, cfg, sim);
                        break;
                }
            }
            rows.push_back(estimate_row(parameter, est));
        }
    }
    emit(o, wpr::csv::render(comments, rows));
    return 0;
}

int run_steady_state(const CommonOpts& o, const std::vector<std::string>& scheme_names,
                     const std::vector<std::string>& mode_names) {
    const auto schemes = parse_schemes(scheme_names, false);
    const auto modes = parse_modes(mode_names);
    const wpr::model::NetworkConfig cfg = to_network(o);
    const wpr::sim::SimConfig sim = to_sim(o, cfg);

    std::vector<std::string> comments = {"command: steady-state"};
    auto cc = wpr::csv::config_comments(cfg, sim, std::nullopt);
    comments.insert(comments.end(), cc.begin(), cc.end());

    std::vector<wpr::csv::Row> rows;
    auto push = [&](const char* quantity, wpr::model::SchemeId scheme,
                    wpr::outage::EstimateMode mode, double value,
                    std::optional<double> se, std::optional<long long> trials) {
        wpr::csv::Row row;
        row.parameter = quantity;
        row.scheme = wpr::model::scheme_name(scheme);
        row.mode = wpr::outage::mode_name(mode);
        row.value = value;
        row.std_error = se;
        row.trials = trials;
        rows.push_back(std::move(row));
    };
    for (auto scheme : schemes) {
        for (auto mode : modes) {
            if (mode == wpr::outage::EstimateMode::analytic) {
                const auto ss = wpr::battery::steady_state(scheme, cfg);
                push("pi0", scheme, mode, ss.pi0, std::nullopt, std::nullopt);
                push("pi1", scheme, mode, ss.pi1, std::nullopt, std::nullopt);
                push("eta0", scheme, mode, ss.eta0, std::nullopt, std::nullopt);
                push("eta1", scheme, mode, ss.eta1, std::nullopt, std::nullopt);
            } else if (mode == wpr::outage::EstimateMode::simulated) {
                const auto est = wpr::sim::estimate_steady_state_detailed(scheme, cfg, sim);
                const auto exposures =
                    static_cast<long long>(est.present_exposures);
                push("pi0", scheme, mode, est.stat.pi0, std::nullopt, std::nullopt);
                push("pi1", scheme, mode, est.stat.pi1, std::nullopt, std::nullopt);
                push("eta0", scheme, mode, est.stat.eta0, std::nullopt, std::nullopt);
                push("eta1", scheme, mode, est.stat.eta1, est.eta1_std_error, exposures);
            } else {
                throw std::invalid_argument(
                    "steady-state supports modes: analytic, simulated");
            }
        }
    }
    emit(o, wpr::csv::render(comments, rows));
    return 0;
}

bool parse_sweep_arg(const std::string& text, wpr::sweep::SweepSpec& spec,
                     std::string& err) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        err = "expected <parameter>=<from>:<to>:<step>";
        return false;
    }
    const auto p = wpr::sweep::parameter_from_name(text.substr(0, eq));
    if (!p) {
        err = "unknown sweep parameter '" + text.substr(0, eq) +
              "' (power_db, d0, psi, rho, rate, lambda, mu)";
        return false;
    }
    spec.parameter = *p;
    const std::string range = text.substr(eq + 1);
    const auto c1 = range.find(':');
    const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        err = "expected <parameter>=<from>:<to>:<step>";
        return false;
    }
    try {
        spec.from = to_double("sweep from", range.substr(0, c1));
        spec.to = to_double("sweep to", range.substr(c1 + 1, c2 - c1 - 1));
        spec.step = to_double("sweep step", range.substr(c2 + 1));
    } catch (const std::exception& e) {
        err = e.what();
        return false;
    }
    return true;
}

int run_sweep_cmd(const CommonOpts& o, const std::string& sweep_arg,
                  const std::vector<std::string>& scheme_names,
                  const std::vector<std::string>& mode_names, bool multicell) {
    wpr::sweep::SweepSpec spec;
    std::string err;
    if (!parse_sweep_arg(sweep_arg, spec, err)) {
        std::fprintf(stderr, "error: --sweep %s: %s\n", sweep_arg.c_str(), err.c_str());
        return 2;
    }
    const bool effective_multicell =
        multicell || spec.parameter == wpr::sweep::Parameter::mu;
    spec.schemes = parse_schemes(scheme_names, effective_multicell);
    spec.modes = parse_modes(mode_names);

    wpr::sweep::SweepContext ctx;
    ctx.base = to_network(o);
    ctx.multicell = multicell;
    ctx.mu = o.mu;
    ctx.threads = o.threads;
    const wpr::model::NetworkConfig sim_ref =
        effective_multicell ? wpr::model::make_multicell(ctx.base, ctx.mu).base
                            : ctx.base;
    ctx.sim = to_sim(o, sim_ref);

    const wpr::sweep::SweepResult result = wpr::sweep::run_sweep(spec, ctx);

    std::vector<std::string> comments = {
        std::string("command: sweep ") + wpr::sweep::parameter_name(spec.parameter) +
        "=" + format_double(spec.from) + ":" + format_double(spec.to) + ":" +
        format_double(spec.step)};
    auto cc = wpr::csv::config_comments(
        ctx.base, ctx.sim,
        effective_multicell ? std::optional<double>(ctx.mu) : std::nullopt);
    comments.insert(comments.end(), cc.begin(), cc.end());

    emit(o, wpr::csv::render(comments, wpr::sweep::to_rows(result, spec)));
    if (result.had_errors) {
        std::fprintf(stderr, "error: one or more sweep points failed; see # error comments in the output\n");
        return 1;
    }
    return 0;
}

int run_validate(std::uint64_t seed, bool quick, int criterion, int threads,
                 const std::string& out_path) {
    wpr::validate::Options opt;
    opt.seed = seed;
    opt.quick = quick;
    opt.threads = threads;
    const std::vector<wpr::validate::CheckResult> results =
        criterion == 0 ? wpr::validate::run_all(opt)
                       : wpr::validate::run_criterion(criterion, opt);
    const std::string report = wpr::validate::format_report(results);
    if (out_path.empty()) {
        std::fwrite(report.data(), 1, report.size(), stdout);
    } else {
        wpr::csv::write_file(out_path, report);
    }
    return wpr::validate::all_passed(results) ? 0 : 1;
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_sim) {
    cmd->add_option("--config", o.config_path,
                    "config file of key=value lines (flags take precedence)");
    cmd->add_option("--lambda", o.lambda, "relay density per unit area");
    cmd->add_option("--rho", o.rho, "relay disc radius");
    cmd->add_option("--alpha", o.alpha, "path loss exponent");
    cmd->add_option("--power-db", o.power_db, "transmit power in dB over noise");
    cmd->add_option("--psi", o.psi, "power-splitting fraction (0,1)");
    cmd->add_option("--noise", o.noise, "noise power (linear)");
    cmd->add_option("--rate", o.rate, "target rate, BPCU");
    cmd->add_option("--d0", o.d0, "access-point to destination distance");
    cmd->add_option("--zeta", o.zeta, "energy conversion efficiency (0,1]");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    if (with_sim) {
        cmd->add_option("--seed", o.seed, "simulator seed");
        cmd->add_option("--slots", o.slots, "measured slots per topology draw");
        cmd->add_option("--draws", o.draws, "independent topology draws");
        cmd->add_option("--burn-in", o.burn_in,
                        "burn-in slots per draw (negative: automatic)");
        cmd->add_option("--threads", o.threads,
                        "worker threads (0: hardware concurrency)");
        cmd->add_flag("--exact-dest-distance", o.exact_dest,
                      "beamforming simulator uses exact relay-destination distances");
        cmd->add_flag("--quenched", o.quenched,
                      "freeze one topology per draw instead of per-slot redraw");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"outage and battery analysis for wireless-powered relay selection"};
    app.set_version_flag("--version", wpr::csv::kToolVersion);
    app.require_subcommand(1);

    CommonOpts o;
    // A config file seeds the defaults before flag parsing, so flags win.
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        std::string path;
        if (a == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) path = a.substr(9);
        if (!path.empty()) {
            try {
                apply_config(read_config_file(path), path, o);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                return 2;
            }
        }
    }

    std::vector<std::string> scheme_names;
    std::vector<std::string> mode_names;
    bool multicell_flag = false;
    std::string sweep_arg;
    int rc = 0;

    CLI::App* ss = app.add_subcommand("steady-state",
                                      "battery-state occupancy per scheme");
    add_common_flags(ss, o, true);
    ss->add_option("--scheme", scheme_names, "schemes (default: all)")
        ->delimiter(',');
    ss->add_option("--mode", mode_names, "analytic|simulated (default: analytic)")
        ->delimiter(',');
    ss->callback([&] { rc = run_steady_state(o, scheme_names, mode_names); });

    CLI::App* ou = app.add_subcommand("outage", "outage probability at one operating point");
    add_common_flags(ou, o, true);
    ou->add_option("--scheme", scheme_names, "schemes (default: all)")->delimiter(',');
    ou->add_option("--mode", mode_names,
                   "analytic|simulated|asymptotic (default: analytic)")
        ->delimiter(',');
    ou->add_flag("--multicell", multicell_flag, "use the multi-cell model");
    ou->add_option("--mu", o.mu, "interfering cell density (multi-cell)");
    ou->callback([&] {
        rc = run_outage(o, scheme_names, mode_names, multicell_flag, "outage");
    });

    CLI::App* sw = app.add_subcommand("sweep", "sweep one parameter, CSV per point");
    add_common_flags(sw, o, true);
    sw->add_option("--sweep", sweep_arg, "<parameter>=<from>:<to>:<step>")
        ->required();
    sw->add_option("--scheme", scheme_names, "schemes (default: all)")->delimiter(',');
    sw->add_option("--mode", mode_names,
                   "analytic|simulated|asymptotic (default: analytic)")
        ->delimiter(',');
    sw->add_flag("--multicell", multicell_flag, "use the multi-cell model");
    sw->add_option("--mu", o.mu, "interfering cell density (multi-cell)");
    sw->callback([&] {
        rc = run_sweep_cmd(o, sweep_arg, scheme_names, mode_names, multicell_flag);
    });

    CLI::App* mc = app.add_subcommand("multicell",
                                      "outage with co-channel interference");
    add_common_flags(mc, o, true);
    mc->add_option("--scheme", scheme_names, "schemes (default: all but db)")
        ->delimiter(',');
    mc->add_option("--mode", mode_names,
                   "analytic|simulated|asymptotic (default: analytic)")
        ->delimiter(',');
    mc->add_option("--mu", o.mu, "interfering cell density");
    mc->callback([&] {
        rc = run_outage(o, scheme_names, mode_names, true, "multicell");
    });

    CLI::App* va = app.add_subcommand("validate",
                                      "run the built-in cross-validation suite");
    std::uint64_t va_seed = 424242;
    bool va_quick = false;
    int va_criterion = 0;
    int va_threads = 1;
    std::string va_out;
    va->add_option("--seed", va_seed, "simulator seed");
    va->add_flag("--quick", va_quick, "reduced grids and slot counts");
    va->add_option("--criterion", va_criterion, "run one criterion 1..8 (0: all)")
        ->check(CLI::Range(0, 8));
    va->add_option("--threads", va_threads, "worker threads");
    va->add_option("--out", va_out, "write the report to a file");
    va->callback([&] { rc = run_validate(va_seed, va_quick, va_criterion, va_threads, va_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return rc;
}
