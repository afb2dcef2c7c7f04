#pragma once
// Multi-cell extension of the simulator: the tagged cell works as in the
// single-cell engine, but the first hop sees co-channel interference from
// the surrounding access points (PPP of density mu outside the cell). Relay
// second hops are orthogonal and interference-free.

#include "wprelay/model/config.hpp"
#include "wprelay/sim/engine.hpp"

#include <cstdint>

namespace wpr::sim {

// Interferer field sampling plan. Points inside [inner, split] are drawn
// exactly (Poisson count, inverse-CDF radii, exponential marks); the
// remainder [split, outer] contributes a clipped Gaussian with the exact
// aggregate mean/variance, which is statistically indistinguishable at the
// tolerances used here because that band holds thousands of far, tiny terms.
struct InterferenceParams {
    double mu = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;      // SNR threshold, scales interference in the decode test
    double inner_radius = 0.0; // cell edge: no interferers inside
    double split_radius = 0.0;
    double outer_radius = 0.0; // truncation; tail beyond it is dropped (quantified in config)
    double inner_mean_count = 0.0;
    double remainder_mean = 0.0;
    double remainder_sd = 0.0;
};

InterferenceParams make_interference_params(const model::MultiCellConfig& config);

// Normalized aggregate interference sum H_j r_j^(-alpha) for one slot
// (interferers transmit at the serving AP's power, so it factors out).
double sample_interference(const InterferenceParams& params, RandomStream& rng);
double sample_interference(const InterferenceParams& params, std::uint64_t seed,
                           std::uint64_t stream_id);

// Expected normalized interference of the full annulus, for oracle checks.
double mean_interference(const InterferenceParams& params);

// Single-slot step; distributed beamforming is not part of the multi-cell
// model and raises model_domain_error.
SlotOutcome run_slot_multicell(model::SchemeId scheme, const TopologyRealization& topology,
                               BatteryState& battery, const model::MultiCellConfig& config,
                               RandomStream& rng);

outage::OutageEstimate estimate_outage_multicell(model::SchemeId scheme,
                                                 const model::MultiCellConfig& config,
                                                 const SimConfig& sim);

} // namespace wpr::sim
