#include "wprelay/sim/engine.hpp"

#include "engine_detail.hpp"
#include "wprelay/errors.hpp"
#include "wprelay/sim/batch.hpp"
#include "wprelay/sim/multicell.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace wpr::sim {

namespace {

using detail::ChainCounts;
using detail::SlotView;
using detail::kTwoPi;

struct EngineSetup {
    model::NetworkConfig cfg;
    model::DerivedParams dp;
    model::SchemeId scheme;
    bool multicell = false;
    InterferenceParams ip{};
};

// Reusable per-thread scratch.
struct DrawState {
    std::vector<Battery> pool;
    std::vector<std::uint32_t> perm;
    std::vector<std::uint32_t> swaps;
    std::vector<double> u, d, theta, dalpha, t_first, t_charge, h2, g2;

    void reserve_relays(std::size_t n) {
        if (d.size() >= n) return;
        u.resize(2 * n);
        d.resize(n);
        theta.resize(n);
        dalpha.resize(n);
        t_first.resize(n);
        t_charge.resize(n);
        h2.resize(n);
        g2.resize(n);
        swaps.resize(n);
    }
};

// Position-dependent arrays for one slot. dalpha holds bare d^alpha; the
// bounded (1 + d^alpha) forms are folded into the thresholds.
void build_thresholds(const EngineSetup& es, int n, DrawState& st, double interference) {
    batch::vpow(st.d.data(), es.cfg.alpha, st.dalpha.data(), static_cast<std::size_t>(n));
    const double charge_coeff = es.cfg.psi / es.cfg.zeta;
    for (int j = 0; j < n; ++j) st.t_charge[j] = charge_coeff * (1.0 + st.dalpha[j]);
    if (!es.multicell) {
        const double xi = es.dp.xi;
        for (int j = 0; j < n; ++j) st.t_first[j] = xi * (1.0 + st.dalpha[j]);
    } else {
        // SINR decode with unbounded loss: h2 >= d^alpha (xi + eps I).
        const double coef = es.dp.xi + es.dp.epsilon * interference;
        for (int j = 0; j < n; ++j) st.t_first[j] = st.dalpha[j] * coef;
    }
}

void set_view_arrays(SlotView& view, const DrawState& st, int n) {
    view.n = n;
    view.d = st.d.data();
    view.theta = st.theta.data();
    view.t_first = st.t_first.data();
    view.t_charge = st.t_charge.data();
    view.h2 = st.h2.data();
    view.g2 = st.g2.data();
}

ChainCounts run_draw(const EngineSetup& es, const SimConfig& sim, std::uint32_t draw,
                     DrawState& st) {
    const double m = es.dp.mean_count;
    const long long total_slots = sim.burn_in_slots + sim.measure_slots;
    ChainCounts counts;

    SlotView view;
    view.second_coeff = es.dp.xi / es.cfg.psi;
    view.d0 = es.cfg.d0;
    view.alpha = es.cfg.alpha;
    view.clamp_dest_db = !sim.exact_relay_dest_distance;

    if (sim.redraw_topology_each_slot) {
        const std::size_t pool_n = pool_size(m);
        st.pool.assign(pool_n, Battery::empty);
        st.perm.resize(pool_n);
        std::iota(st.perm.begin(), st.perm.end(), 0u);
        auto bat = [&st](int j) -> Battery& {
            return st.pool[st.perm[static_cast<std::size_t>(j)]];
        };
        for (long long slot = 0; slot < total_slots; ++slot) {
            const std::uint64_t sid =
                (static_cast<std::uint64_t>(draw) << 32) | static_cast<std::uint64_t>(slot);
            const bool measuring = slot >= sim.burn_in_slots;
            ChainCounts* cp = measuring ? &counts : nullptr;
            RandomStream count_rng(sim.seed, kPurposeCount, sid);
            long long n64 = count_rng.poisson(m);
            // The pool is sized so overflow has probability < e^-40; clamping
            // there keeps the subset draw well-defined.
            if (n64 > static_cast<long long>(pool_n)) n64 = static_cast<long long>(pool_n);
            const int n = static_cast<int>(n64);
            if (n == 0) {
                if (cp) {
                    ++cp->slots;
                    ++cp->outages; // empty cell is an outage; batteries idle
                }
                continue;
            }
            st.reserve_relays(static_cast<std::size_t>(n));
            // Uniform random present subset: partial Fisher-Yates, undone
            // after the slot so each slot depends only on its own streams.
            RandomStream subset_rng(sim.seed, kPurposeSubset, sid);
            for (int j = 0; j < n; ++j) {
                const std::uint32_t k =
                    static_cast<std::uint32_t>(j) +
                    subset_rng.bounded_u32(
                        static_cast<std::uint32_t>(pool_n - static_cast<std::size_t>(j)));
                std::swap(st.perm[static_cast<std::size_t>(j)], st.perm[k]);
                st.swaps[static_cast<std::size_t>(j)] = k;
            }
            batch::fill_u01(sim.seed, kPurposePosition, sid, 0, st.u.data(),
                            2 * static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                st.d[j] = es.cfg.rho * std::sqrt(st.u[2 * j]);
                st.theta[j] = kTwoPi * st.u[2 * j + 1];
            }
            const double interference =
                es.multicell ? sample_interference(es.ip, sim.seed, sid) : 0.0;
            build_thresholds(es, n, st, interference);
            batch::fill_exponentials(sim.seed, kPurposeFadeH, sid, 0, st.h2.data(),
                                     static_cast<std::size_t>(n));
            batch::fill_exponentials(sim.seed, kPurposeFadeG, sid, 0, st.g2.data(),
                                     static_cast<std::size_t>(n));
            set_view_arrays(view, st, n);
            RandomStream select_rng(sim.seed, kPurposeSelect, sid);
            detail::step_slot(es.scheme, view, bat, select_rng, cp);
            for (int j = n - 1; j >= 0; --j)
                std::swap(st.perm[static_cast<std::size_t>(j)],
                          st.perm[st.swaps[static_cast<std::size_t>(j)]]);
        }
        return counts;
    }

    // Quenched mode: one topology per draw, batteries per relay.
    RandomStream topo_rng(sim.seed, kPurposeTopology, draw);
    TopologyRealization topo = sample_topology(es.cfg, topo_rng);
    const int n = static_cast<int>(topo.count);
    st.pool.assign(static_cast<std::size_t>(std::max(n, 1)), Battery::empty);
    auto bat = [&st](int j) -> Battery& { return st.pool[static_cast<std::size_t>(j)]; };
    if (n == 0) {
        counts.slots = static_cast<unsigned long long>(sim.measure_slots);
        counts.outages = counts.slots;
        return counts;
    }
    st.reserve_relays(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        st.d[j] = topo.relays[static_cast<std::size_t>(j)].distance_to_ap;
        st.theta[j] = topo.relays[static_cast<std::size_t>(j)].angle;
    }
    build_thresholds(es, n, st, 0.0);
    set_view_arrays(view, st, n);
    for (long long slot = 0; slot < total_slots; ++slot) {
        const std::uint64_t sid =
            (static_cast<std::uint64_t>(draw) << 32) | static_cast<std::uint64_t>(slot);
        const bool measuring = slot >= sim.burn_in_slots;
        if (es.multicell) {
            const double interference = sample_interference(es.ip, sim.seed, sid);
            const double coef = es.dp.xi + es.dp.epsilon * interference;
            for (int j = 0; j < n; ++j) st.t_first[j] = st.dalpha[j] * coef;
        }
        batch::fill_exponentials(sim.seed, kPurposeFadeH, sid, 0, st.h2.data(),
                                 static_cast<std::size_t>(n));
        batch::fill_exponentials(sim.seed, kPurposeFadeG, sid, 0, st.g2.data(),
                                 static_cast<std::size_t>(n));
        RandomStream select_rng(sim.seed, kPurposeSelect, sid);
        detail::step_slot(es.scheme, view, bat, select_rng, measuring ? &counts : nullptr);
    }
    return counts;
}

void check_sim(const SimConfig& sim) {
    if (sim.measure_slots < 1) throw std::invalid_argument("sim: measure_slots must be >= 1");
    if (sim.topology_draws < 1) throw std::invalid_argument("sim: topology_draws must be >= 1");
    if (sim.burn_in_slots < 0) throw std::invalid_argument("sim: burn_in_slots must be >= 0");
    if (sim.threads < 0) throw std::invalid_argument("sim: threads must be >= 0");
}

std::vector<ChainCounts> run_all_draws(const EngineSetup& es, const SimConfig& sim) {
    check_sim(sim);
    const int draws = sim.topology_draws;
    int threads = sim.threads == 0 ? static_cast<int>(std::thread::hardware_concurrency())
                                   : sim.threads;
    threads = std::clamp(threads, 1, draws);
    std::vector<ChainCounts> per_draw(static_cast<std::size_t>(draws));
    if (threads == 1) {
        DrawState st;
        for (int d = 0; d < draws; ++d)
            per_draw[static_cast<std::size_t>(d)] =
                run_draw(es, sim, static_cast<std::uint32_t>(d), st);
        return per_draw;
    }
    // Independent draws striped over threads; every count lands in its own
    // slot, so the later reduction is order-fixed regardless of scheduling.
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&, t]() {
            try {
                DrawState st;
                for (int d = t; d < draws; d += threads)
                    per_draw[static_cast<std::size_t>(d)] =
                        run_draw(es, sim, static_cast<std::uint32_t>(d), st);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return per_draw;
}

outage::OutageEstimate reduce_outage(model::SchemeId scheme,
                                     const std::vector<ChainCounts>& per_draw) {
    unsigned long long outages = 0, slots = 0;
    for (const auto& c : per_draw) {
        outages += c.outages;
        slots += c.slots;
    }
    outage::OutageEstimate r;
    r.scheme = scheme;
    r.mode = outage::EstimateMode::simulated;
    const double p = slots ? static_cast<double>(outages) / static_cast<double>(slots) : 1.0;
    r.value = p;
    r.std_error =
        slots ? std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(slots)) : 0.0;
    r.trials = static_cast<long long>(slots);
    return r;
}

SteadyStateEstimate reduce_steady_state(const std::vector<ChainCounts>& per_draw) {
    ChainCounts tot;
    for (const auto& c : per_draw) {
        tot.n00 += c.n00;
        tot.n01 += c.n01;
        tot.n10 += c.n10;
        tot.n11 += c.n11;
    }
    const double empty_n = static_cast<double>(tot.n00 + tot.n01);
    const double charged_n = static_cast<double>(tot.n10 + tot.n11);
    const double present = empty_n + charged_n;
    SteadyStateEstimate est;
    est.stat.pi0 = empty_n > 0 ? static_cast<double>(tot.n01) / empty_n : 0.0;
    est.stat.pi1 = charged_n > 0 ? static_cast<double>(tot.n10) / charged_n : 0.0;
    est.stat.eta1 = present > 0 ? charged_n / present : 0.0;
    est.stat.eta0 = 1.0 - est.stat.eta1;
    est.present_exposures = tot.n00 + tot.n01 + tot.n10 + tot.n11;
    // Across-draw spread of the per-draw eta1 means.
    double sum = 0.0, sum2 = 0.0;
    int k = 0;
    for (const auto& c : per_draw) {
        const double denom = static_cast<double>(c.n00 + c.n01 + c.n10 + c.n11);
        if (denom <= 0.0) continue;
        const double e = static_cast<double>(c.n10 + c.n11) / denom;
        sum += e;
        sum2 += e * e;
        ++k;
    }
    if (k >= 2) {
        const double mean = sum / k;
        const double var =
            std::max(sum2 / k - mean * mean, 0.0) * (static_cast<double>(k) / (k - 1));
        est.eta1_std_error = std::sqrt(var / k);
    }
    return est;
}

} // namespace

std::size_t pool_size(double mean_count) {
    const double a = std::ceil(4.0 * mean_count);
    const double b = std::ceil(mean_count + 10.0 * std::sqrt(mean_count) + 20.0);
    return static_cast<std::size_t>(std::max({a, b, 8.0}));
}

long long recommended_burn_in(const model::NetworkConfig& config) {
    const auto dp = model::derive(config);
    const double pi0 = battery::charge_probability(config);
    const double pool = static_cast<double>(pool_size(dp.mean_count));
    // Each pool member is present in a slot w.p. ~m/pool and then charges
    // w.p. pi0; ~25 such opportunities forgets the all-empty start.
    const double needed = std::ceil(25.0 * pool / (dp.mean_count * pi0));
    return std::max<long long>(1000, static_cast<long long>(needed));
}

TopologyRealization sample_topology(const model::NetworkConfig& config, RandomStream& rng) {
    model::validate(config);
    const auto dp = model::derive(config);
    TopologyRealization topo;
    topo.destination_distance = config.d0;
    topo.count = rng.poisson(dp.mean_count);
    topo.relays.resize(static_cast<std::size_t>(topo.count));
    for (auto& r : topo.relays) {
        r.distance_to_ap = config.rho * std::sqrt(rng.u01());
        r.angle = kTwoPi * rng.u01();
    }
    return topo;
}

SlotOutcome run_slot(model::SchemeId scheme, const TopologyRealization& topology,
                     BatteryState& battery, const model::NetworkConfig& config,
                     RandomStream& rng, bool clamp_dest_distance) {
    if (battery.size() != topology.relays.size())
        throw std::invalid_argument("run_slot: battery vector does not match topology");
    model::validate(config);
    EngineSetup es{config, model::derive(config), scheme, false, {}};
    const int n = static_cast<int>(topology.relays.size());
    DrawState st;
    st.reserve_relays(static_cast<std::size_t>(std::max(n, 1)));
    for (int j = 0; j < n; ++j) {
        st.d[j] = topology.relays[static_cast<std::size_t>(j)].distance_to_ap;
        st.theta[j] = topology.relays[static_cast<std::size_t>(j)].angle;
    }
    build_thresholds(es, n, st, 0.0);
    for (int j = 0; j < n; ++j) st.h2[j] = rng.exponential();
    for (int j = 0; j < n; ++j) st.g2[j] = rng.exponential();
    SlotView view;
    view.second_coeff = es.dp.xi / config.psi;
    view.d0 = topology.destination_distance;
    view.alpha = config.alpha;
    view.clamp_dest_db = clamp_dest_distance;
    set_view_arrays(view, st, n);
    auto bat = [&battery](int j) -> Battery& { return battery[static_cast<std::size_t>(j)]; };
    return detail::step_slot(scheme, view, bat, rng, nullptr);
}

outage::OutageEstimate estimate_outage(model::SchemeId scheme, const model::NetworkConfig& config,
                                       const SimConfig& sim) {
    model::validate(config);
    EngineSetup es{config, model::derive(config), scheme, false, {}};
    return reduce_outage(scheme, run_all_draws(es, sim));
}

SteadyStateEstimate estimate_steady_state_detailed(model::SchemeId scheme,
                                                   const model::NetworkConfig& config,
                                                   const SimConfig& sim) {
    model::validate(config);
    EngineSetup es{config, model::derive(config), scheme, false, {}};
    return reduce_steady_state(run_all_draws(es, sim));
}

battery::SteadyState estimate_steady_state(model::SchemeId scheme,
                                           const model::NetworkConfig& config,
                                           const SimConfig& sim) {
    return estimate_steady_state_detailed(scheme, config, sim).stat;
}

outage::OutageEstimate estimate_outage_multicell(model::SchemeId scheme,
                                                 const model::MultiCellConfig& config,
                                                 const SimConfig& sim) {
    if (scheme == model::SchemeId::DB)
        throw model_domain_error("distributed beamforming is not part of the multi-cell model");
    model::validate(config);
    EngineSetup es{config.base, model::derive(config.base), scheme, true,
                   make_interference_params(config)};
    return reduce_outage(scheme, run_all_draws(es, sim));
}

} // namespace wpr::sim
