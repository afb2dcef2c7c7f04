#pragma once
// Counter-based RNG for the simulator. Every random quantity is addressed by
// (seed, purpose, stream id, position), so any slot of any draw can be
// regenerated independently of execution order; parallel and serial runs are
// bit-identical by construction.

#include <array>
#include <cstdint>

namespace wpr::sim {

// Stream purposes. Keeping them distinct means redrawing one quantity never
// shifts another's sequence.
inline constexpr std::uint32_t kPurposeCount = 0;        // per-slot relay count
inline constexpr std::uint32_t kPurposeSubset = 1;       // pool membership shuffle
inline constexpr std::uint32_t kPurposePosition = 2;     // relay positions
inline constexpr std::uint32_t kPurposeFadeH = 3;        // AP->relay fading
inline constexpr std::uint32_t kPurposeFadeG = 4;        // relay->dest fading
inline constexpr std::uint32_t kPurposeSelect = 5;       // random-selection picks
inline constexpr std::uint32_t kPurposeInterference = 6; // out-of-cell interferers
inline constexpr std::uint32_t kPurposeTopology = 7;     // fixed-topology draws

struct PhiloxKey {
    std::uint32_t k0, k1;
};

inline PhiloxKey make_key(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed),
            static_cast<std::uint32_t>(seed >> 32)};
}

// Philox 4x32, 10 rounds. Counter layout: [seq, purpose, id_lo, id_hi].
std::array<std::uint32_t, 4> philox_block(std::uint32_t seq, std::uint32_t purpose,
                                          std::uint64_t stream_id, PhiloxKey key);

// Sequential view of one (purpose, stream id) substream.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream_id)
        : key_(make_key(seed)), purpose_(purpose), stream_id_(stream_id) {}

    std::uint32_t next_u32();
    // Uniform on [0, bound), bound >= 1, by rejection (no modulo bias).
    std::uint32_t bounded_u32(std::uint32_t bound);
    // 52-bit uniform in [0, 1).
    double u01();
    // Unit-mean exponential, -log(1-u).
    double exponential();
    // Standard normal by rational inverse-CDF approximation (~1e-15 accurate).
    double normal();
    // Exact Poisson: pmf inversion below mean 10, transformed rejection above.
    long long poisson(double mean);

private:
    void refill();
    PhiloxKey key_;
    std::uint32_t purpose_;
    std::uint64_t stream_id_;
    std::uint32_t seq_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int lane_ = 4; // consumed lanes in buf_
};

// Quantile function of the standard normal (Wichura's rational-minimax
// construction). Domain (0,1); exposed for tests.
double inverse_normal_cdf(double p);

} // namespace wpr::sim
