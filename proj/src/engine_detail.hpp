#pragma once
// Slot decision core shared by the single-cell and multi-cell simulator TUs.
// Internal to src/; the public surface is wprelay/sim/engine.hpp.

#include "wprelay/model/config.hpp"
#include "wprelay/sim/batch.hpp"
#include "wprelay/sim/engine.hpp"

#include <cmath>
#include <limits>

namespace wpr::sim::detail {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Relay->destination distance with the deterministic cosine kernel so both
// batch backends see identical values.
inline double dest_distance(double d, double theta, double d0) {
    const double c2 = d * d + d0 * d0 - 2.0 * d * d0 * batch::det_cos(theta);
    return std::sqrt(std::max(c2, 0.0));
}

// Present-relay transition tallies plus outage counts for one measured span.
// All members are integers, which is what makes the parallel reduction exact.
struct ChainCounts {
    unsigned long long n00 = 0, n01 = 0, n10 = 0, n11 = 0; // before->after battery
    unsigned long long outages = 0, slots = 0;
};

inline void tally(ChainCounts& c, Battery before, Battery after) {
    if (before == Battery::charged) {
        if (after == Battery::charged) ++c.n11;
        else ++c.n10;
    } else {
        if (after == Battery::charged) ++c.n01;
        else ++c.n00;
    }
}

// Everything the decision core needs about one slot.
struct SlotView {
    int n = 0;
    const double* d = nullptr;
    const double* theta = nullptr;
    const double* t_first = nullptr;  // decode threshold on |h|^2
    const double* t_charge = nullptr; // charge threshold on |h|^2
    const double* h2 = nullptr;
    const double* g2 = nullptr;
    double second_coeff = 0.0; // xi/psi: second hop ok iff g2/(1+c^alpha) >= this
    double d0 = 0.0;
    double alpha = 0.0;
    bool clamp_dest_db = true; // beamforming second hop at c_i = d0
};

// One slot: selection, decode checks, in-place battery update, optional
// transition/outage tallies. `bat(j)` must yield the battery cell of the
// j-th present relay.
template <typename BatteryRef>
SlotOutcome step_slot(model::SchemeId scheme, const SlotView& v, BatteryRef bat,
                      RandomStream& select_rng, ChainCounts* counts) {
    SlotOutcome out;
    const int n = v.n;

    if (scheme == model::SchemeId::DB) {
        // Every charged relay tries the first hop; decoders beamform, and the
        // destination SNR is the coherent sum over the decoding set.
        double sum = 0.0;
        int cnt = 0;
        for (int j = 0; j < n; ++j) {
            if (bat(j) == Battery::charged && v.h2[j] >= v.t_first[j]) {
                const double c = v.clamp_dest_db ? v.d0 : dest_distance(v.d[j], v.theta[j], v.d0);
                sum += v.g2[j] / (1.0 + batch::det_pow(c, v.alpha));
                ++cnt;
            }
        }
        out.participants = cnt;
        out.first_hop_ok = cnt > 0;
        out.second_hop_ok = out.first_hop_ok && sum >= v.second_coeff;
        out.outage = !out.second_hop_ok;
        for (int j = 0; j < n; ++j) {
            Battery& b = bat(j);
            const Battery before = b;
            if (b == Battery::charged) b = Battery::empty; // full discharge, decode or not
            else if (v.h2[j] >= v.t_charge[j]) b = Battery::charged;
            if (counts) tally(*counts, before, b);
        }
        if (counts) {
            ++counts->slots;
            counts->outages += out.outage ? 1u : 0u;
        }
        return out;
    }

    int sel = -1;
    switch (scheme) {
        case model::SchemeId::RRS:
            if (n > 0) sel = static_cast<int>(select_rng.bounded_u32(static_cast<std::uint32_t>(n)));
            break;
        case model::SchemeId::RCS: {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j)
                if (v.d[j] < best) {
                    best = v.d[j];
                    sel = j;
                }
            break;
        }
        case model::SchemeId::RRSB: {
            int k = 0;
            for (int j = 0; j < n; ++j) k += bat(j) == Battery::charged ? 1 : 0;
            if (k > 0) {
                int pick = static_cast<int>(select_rng.bounded_u32(static_cast<std::uint32_t>(k)));
                for (int j = 0; j < n; ++j)
                    if (bat(j) == Battery::charged && pick-- == 0) {
                        sel = j;
                        break;
                    }
            }
            break;
        }
        case model::SchemeId::RCSB: {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j)
                if (bat(j) == Battery::charged && v.d[j] < best) {
                    best = v.d[j];
                    sel = j;
                }
            break;
        }
        default:
            break;
    }
    out.selected = sel;
    if (sel >= 0 && bat(sel) == Battery::charged) {
        out.first_hop_ok = v.h2[sel] >= v.t_first[sel];
        if (out.first_hop_ok) {
            const double c = dest_distance(v.d[sel], v.theta[sel], v.d0);
            out.second_hop_ok = v.g2[sel] >= v.second_coeff * (1.0 + batch::det_pow(c, v.alpha));
        }
    }
    out.outage = !(out.first_hop_ok && out.second_hop_ok);
    for (int j = 0; j < n; ++j) {
        Battery& b = bat(j);
        const Battery before = b;
        if (j == sel && b == Battery::charged) {
            b = Battery::empty; // transmitted, decode result irrelevant
        } else if (b == Battery::empty && v.h2[j] >= v.t_charge[j]) {
            b = Battery::charged; // harvest; covers a selected-but-empty relay too
        }
        if (counts) tally(*counts, before, b);
    }
    if (counts) {
        ++counts->slots;
        counts->outages += out.outage ? 1u : 0u;
    }
    return out;
}

} // namespace wpr::sim::detail
