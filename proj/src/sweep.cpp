#include "wprelay/sweep.hpp"

#include "wprelay/errors.hpp"
#include "wprelay/outage/multicell.hpp"
#include "wprelay/outage/single_cell.hpp"
#include "wprelay/sim/multicell.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace wpr::sweep {

const char* parameter_name(Parameter parameter) {
    switch (parameter) {
        case Parameter::power_db: return "power_db";
        case Parameter::d0: return "d0";
        case Parameter::psi: return "psi";
        case Parameter::rho: return "rho";
        case Parameter::rate: return "rate";
        case Parameter::lambda: return "lambda";
        case Parameter::mu: return "mu";
    }
    return "?";
}

std::optional<Parameter> parameter_from_name(std::string_view name) {
    for (Parameter p : {Parameter::power_db, Parameter::d0, Parameter::psi,
                        Parameter::rho, Parameter::rate, Parameter::lambda,
                        Parameter::mu}) {
        if (name == parameter_name(p)) return p;
    }
    return std::nullopt;
}

std::vector<double> sweep_values(const SweepSpec& spec) {
    if (!(spec.step > 0.0))
        throw std::invalid_argument("sweep step must be positive");
    if (!(spec.from <= spec.to))
        throw std::invalid_argument("sweep range must have from <= to");
    const double span = (spec.to - spec.from) / spec.step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i)
        values[i] = spec.from + static_cast<double>(i) * spec.step;
    return values;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepContext& ctx) {
    if (spec.schemes.empty())
        throw std::invalid_argument("sweep requires at least one scheme");
    if (spec.modes.empty())
        throw std::invalid_argument("sweep requires at least one mode");
    if (ctx.multicell && (spec.parameter == Parameter::rho ||
                          spec.parameter == Parameter::d0))
        throw std::invalid_argument(
            "rho and d0 are derived from mu in the multi-cell model and cannot "
            "be swept there");
    const std::vector<double> values = sweep_values(spec);

    SweepResult result;
    result.points.resize(values.size() * spec.schemes.size() * spec.modes.size());
    std::size_t t = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (model::SchemeId scheme : spec.schemes) {
            for (outage::EstimateMode mode : spec.modes) {
                SweepPoint& p = result.points[t++];
                p.index = i;
                p.parameter_value = values[i];
                p.scheme = scheme;
                p.mode = mode;
            }
        }
    }

    sim::SimConfig point_sim = ctx.sim;
    if (ctx.threads > 1) point_sim.threads = 1;

    std::atomic<bool> had_errors{false};
    auto run_point = [&](SweepPoint& p) {
        model::NetworkConfig cfg = ctx.base;
        bool multicell = ctx.multicell;
        double mu = ctx.mu;
        switch (spec.parameter) {
            case Parameter::power_db:
                cfg.power = std::pow(10.0, p.parameter_value / 10.0) * cfg.noise;
                break;
            case Parameter::d0: cfg.d0 = p.parameter_value; break;
            case Parameter::psi: cfg.psi = p.parameter_value; break;
            case Parameter::rho: cfg.rho = p.parameter_value; break;
            case Parameter::rate: cfg.rate = p.parameter_value; break;
            case Parameter::lambda: cfg.lambda = p.parameter_value; break;
            case Parameter::mu:
                mu = p.parameter_value;
                multicell = true;
                break;
        }
        try {
            if (multicell) {
                const model::MultiCellConfig mc = model::make_multicell(cfg, mu);
                switch (p.mode) {
                    case outage::EstimateMode::analytic:
                        p.estimate = outage::outage_multicell(p.scheme, mc);
                        break;
                    case outage::EstimateMode::asymptotic:
                        p.estimate = outage::outage_multicell_floor(p.scheme, mc);
                        break;
                    case outage::EstimateMode::simulated:
                        p.estimate =
                            sim::estimate_outage_multicell(p.scheme, mc, point_sim);
                        break;
                }
            } else {
                switch (p.mode) {
                    case outage::EstimateMode::analytic:
                        p.estimate = outage::outage(p.scheme, cfg);
                        break;
                    case outage::EstimateMode::asymptotic:
                        p.estimate = outage::outage_floor(p.scheme, cfg);
                        break;
                    case outage::EstimateMode::simulated:
                        p.estimate = sim::estimate_outage(p.scheme, cfg, point_sim);
                        break;
                }
            }
        } catch (const std::exception& e) {
            p.estimate.value = std::numeric_limits<double>::quiet_NaN();
            p.estimate.mode = p.mode;
            p.estimate.scheme = p.scheme;
            p.estimate.std_error.reset();
            p.estimate.trials.reset();
            p.error = e.what();
            had_errors.store(true, std::memory_order_relaxed);
        }
    };

    const std::size_t total = result.points.size();
    const int workers =
        std::max(1, std::min<int>(ctx.threads, static_cast<int>(total)));
    if (workers == 1) {
        for (auto& p : result.points) run_point(p);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (;;) {
                        const std::size_t i =
                            next.fetch_add(1, std::memory_order_relaxed);
                        if (i >= total) break;
                        run_point(result.points[i]);
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    result.had_errors = had_errors.load();
    return result;
}

std::vector<csv::Row> to_rows(const SweepResult& result, const SweepSpec& spec) {
    const std::string axis = parameter_name(spec.parameter);
    std::vector<csv::Row> rows;
    rows.reserve(result.points.size());
    for (const auto& p : result.points) {
        csv::Row row;
        row.parameter = axis + "=" + csv::format_double(p.parameter_value);
        row.scheme = model::scheme_name(p.scheme);
        row.mode = outage::mode_name(p.mode);
        row.value = p.estimate.value;
        row.std_error = p.estimate.std_error;
        row.trials = p.estimate.trials;
        row.error = p.error;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace wpr::sweep
