#pragma once
// Outage probability result with provenance. Simulated estimates carry a
// standard error and trial count; analytic and asymptotic ones do not.

#include "wprelay/model/config.hpp"

#include <optional>

namespace wpr::outage {

enum class EstimateMode { analytic, asymptotic, simulated };

const char* mode_name(EstimateMode mode);
EstimateMode mode_from_name(std::string_view name);

struct OutageEstimate {
    double value = 0.0;
    EstimateMode mode = EstimateMode::analytic;
    model::SchemeId scheme = model::SchemeId::RRS;
    std::optional<double> std_error;  // simulated only
    std::optional<long long> trials;  // simulated only
};

} // namespace wpr::outage
