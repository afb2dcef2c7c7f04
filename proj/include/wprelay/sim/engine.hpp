#pragma once
// Monte Carlo engine. Slot protocol: the access point powers/serves a PPP of
// relays on a disc; each relay keeps a two-state battery (empty/charged); one
// relay (or, for distributed beamforming, every charged decoder) forwards to
// the destination. Outage and battery statistics are estimated from slot
// counts.
//
// Ensemble: by default each slot redraws the relay set from a persistent
// battery pool (random subset of pool members is "present"), which reproduces
// the analysis' joint spatial/temporal averaging; a quenched mode that holds
// one topology per draw is kept for studying conditional behavior.

#include "wprelay/battery/steady_state.hpp"
#include "wprelay/model/config.hpp"
#include "wprelay/outage/estimate.hpp"
#include "wprelay/sim/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace wpr::sim {

struct RelayPos {
    double distance_to_ap;
    double angle;
};

struct TopologyRealization {
    std::vector<RelayPos> relays;
    long long count = 0; // == relays.size()
    double destination_distance = 0.0;
};

enum class Battery : std::uint8_t { empty = 0, charged = 1 };
using BatteryState = std::vector<Battery>;

struct SlotOutcome {
    bool outage = true;
    bool first_hop_ok = false;
    bool second_hop_ok = false;
    // Transmitting relay for single-selection schemes (-1 when none was
    // available); beamforming reports the decoding-set size instead.
    int selected = -1;
    int participants = 0;
};

struct SimConfig {
    std::uint64_t seed = 1;
    long long burn_in_slots = 1000;
    long long measure_slots = 5000;
    int topology_draws = 200;
    // Beamforming second hop: use exact relay->destination distances instead
    // of the c_i = d0 clamp the closed form is built on.
    bool exact_relay_dest_distance = false;
    // Pooled ensemble (default) vs quenched per-draw topology.
    bool redraw_topology_each_slot = true;
    int threads = 1; // 0 = hardware concurrency
};

// Battery pool size backing the pooled ensemble for mean relay count m.
std::size_t pool_size(double mean_count);

// Burn-in long enough for the battery pool to forget its all-empty start:
// every pool member needs several presence/charge opportunities.
long long recommended_burn_in(const model::NetworkConfig& config);

// One PPP draw: count ~ Poisson(lambda pi rho^2), positions uniform on the
// disc (radius rho sqrt(U), angle 2 pi V), destination at d0 from the center.
TopologyRealization sample_topology(const model::NetworkConfig& config, RandomStream& rng);

// Advances one slot on the given topology: fresh fading, selection, decode
// checks, and in-place battery update. `battery` must have one entry per
// relay. Consumes rng in the order: n first-hop fadings, n second-hop
// fadings, then any selection picks. `clamp_dest_distance` pins the
// beamforming second hop at c_i = d0 (the closed form's approximation).
// Used directly by tests; the estimators below run the same decision core
// on batched draws.
SlotOutcome run_slot(model::SchemeId scheme, const TopologyRealization& topology,
                     BatteryState& battery, const model::NetworkConfig& config,
                     RandomStream& rng, bool clamp_dest_distance = false);

outage::OutageEstimate estimate_outage(model::SchemeId scheme, const model::NetworkConfig& config,
                                       const SimConfig& sim);

struct SteadyStateEstimate {
    battery::SteadyState stat{};
    // Spread of per-draw eta1 means (needs >= 2 draws).
    std::optional<double> eta1_std_error;
    // Relay-slots that entered the eta1 average.
    unsigned long long present_exposures = 0;
};

battery::SteadyState estimate_steady_state(model::SchemeId scheme,
                                           const model::NetworkConfig& config,
                                           const SimConfig& sim);
SteadyStateEstimate estimate_steady_state_detailed(model::SchemeId scheme,
                                                   const model::NetworkConfig& config,
                                                   const SimConfig& sim);

} // namespace wpr::sim
