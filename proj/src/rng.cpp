#include "wprelay/sim/rng.hpp"

#include "wprelay/sim/batch.hpp"

#include <cmath>
#include <stdexcept>

namespace wpr::sim {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

} // namespace

std::array<std::uint32_t, 4> philox_block(std::uint32_t seq, std::uint32_t purpose,
                                          std::uint64_t stream_id, PhiloxKey key) {
    std::array<std::uint32_t, 4> x = {seq, purpose,
                                      static_cast<std::uint32_t>(stream_id),
                                      static_cast<std::uint32_t>(stream_id >> 32)};
    std::uint32_t k0 = key.k0, k1 = key.k1;
    for (int round = 0; round < 10; ++round) {
        if (round) {
            k0 += kPhiloxW0;
            k1 += kPhiloxW1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x[2];
        x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k0,
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k1,
             static_cast<std::uint32_t>(p0)};
    }
    return x;
}

void RandomStream::refill() {
    buf_ = philox_block(seq_++, purpose_, stream_id_, key_);
    lane_ = 0;
}

std::uint32_t RandomStream::next_u32() {
    if (lane_ >= 4) refill();
    return buf_[lane_++];
}

std::uint32_t RandomStream::bounded_u32(std::uint32_t bound) {
    if (bound == 0) throw std::invalid_argument("bounded_u32: bound must be >= 1");
    const std::uint32_t min = (-bound) % bound; // 2^32 mod bound
    std::uint32_t r = next_u32();
    while (r < min) r = next_u32();
    return r % bound;
}

double RandomStream::u01() {
    const std::uint32_t hi = next_u32();
    const std::uint32_t lo = next_u32();
    const std::uint64_t u = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(u >> 12) * 0x1.0p-52;
}

double RandomStream::exponential() {
    return -batch::det_log(1.0 - u01());
}

double RandomStream::normal() {
    double u = u01();
    while (u == 0.0) u = u01();
    return inverse_normal_cdf(u);
}

long long RandomStream::poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean < 10.0) {
        // pmf inversion
        const double u = u01();
        double pmf = std::exp(-mean);
        double cdf = pmf;
        long long k = 0;
        while (u > cdf && k < 1000) {
            ++k;
            pmf *= mean / static_cast<double>(k);
            cdf += pmf;
        }
        return k;
    }
    // Transformed rejection with decomposition (PTRD), exact for mean >= 10.
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mu = std::log(mean);
    for (;;) {
        double u = u01() - 0.5;
        double v = u01();
        const double us = 0.5 - std::abs(u);
        const double kd = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<long long>(kd);
        if (kd < 0.0 || (us < 0.013 && v > us)) continue;
        const double k = kd;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = k * log_mu - mean - std::lgamma(k + 1.0);
        if (lhs <= rhs) return static_cast<long long>(kd);
    }
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("inverse_normal_cdf: p must lie in (0,1)");
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
                  + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
                + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
              + 1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
                  + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
                + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
              + 4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                  + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
                + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
              + 4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                  + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
              + 2.05319162663775882187e0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                  + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
              + 5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                  + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
              + 5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return q < 0.0 ? -value : value;
}

} // namespace wpr::sim
