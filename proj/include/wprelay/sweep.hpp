#pragma once
// Parameter sweeps: one axis, a set of schemes, a set of estimate modes.
// Points are dispatched to a worker pool; results come back ordered by
// sweep index regardless of completion order. A failing point is reported
// in its row (NaN value plus an error message) without aborting the sweep.

#include "wprelay/csv.hpp"
#include "wprelay/model/config.hpp"
#include "wprelay/outage/estimate.hpp"
#include "wprelay/sim/engine.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wpr::sweep {

enum class Parameter { power_db, d0, psi, rho, rate, lambda, mu };

const char* parameter_name(Parameter parameter);
std::optional<Parameter> parameter_from_name(std::string_view name);

struct SweepSpec {
    Parameter parameter = Parameter::power_db;
    double from = 0.0;
    double to = 0.0;
    double step = 1.0;
    std::vector<model::SchemeId> schemes;
    std::vector<outage::EstimateMode> modes;
};

struct SweepContext {
    model::NetworkConfig base;
    sim::SimConfig sim;
    // Sweeping mu implies the multi-cell engines even when this is false.
    bool multicell = false;
    double mu = 0.005;
    // Worker pool width for sweep points. When > 1, each point's simulation
    // runs single-threaded to avoid oversubscription; results are identical
    // either way.
    int threads = 1;
};

struct SweepPoint {
    std::size_t index = 0;          // position along the swept axis
    double parameter_value = 0.0;
    model::SchemeId scheme = model::SchemeId::RRS;
    outage::EstimateMode mode = outage::EstimateMode::analytic;
    outage::OutageEstimate estimate;  // value is NaN when error is set
    std::string error;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    bool had_errors = false;
};

// from, from+step, ... up to `to` (inclusive within one part in 1e9 of a
// step). Throws std::invalid_argument unless from <= to and step > 0.
std::vector<double> sweep_values(const SweepSpec& spec);

// Throws std::invalid_argument for an empty scheme or mode list; per-point
// computation errors are captured in the result instead of thrown.
SweepResult run_sweep(const SweepSpec& spec, const SweepContext& ctx);

std::vector<csv::Row> to_rows(const SweepResult& result, const SweepSpec& spec);

} // namespace wpr::sweep
