// Scalar reference implementations of the batch kernels. The AVX2 backend
// mirrors these operation for operation; do not reorder arithmetic here
// without updating it in both places.

#include "wprelay/sim/batch.hpp"

#include "batch_kernels_detail.hpp"
#include "wprelay/sim/rng.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace wpr::sim::batch {

using namespace detail;

namespace {

inline double pow2i(int k) {
    // Exact 2^k for k in [-537, 1023] (always the case after det_exp splits
    // its clamped exponent in half).
    return std::bit_cast<double>(static_cast<std::uint64_t>(1023 + k) << 52);
}

} // namespace

double det_exp(double x) {
    if (std::isnan(x)) return x;
    if (x > kExpOverflow) return std::numeric_limits<double>::infinity();
    if (x < kExpUnderflow) return 0.0;
    double kd = std::nearbyint(x * kLog2E);
    if (kd > 1024.0) kd = 1024.0;
    else if (kd < -1075.0) kd = -1075.0;
    double r = std::fma(kd, -kLn2Hi, x);
    r = std::fma(kd, -kLn2Lo, r);
    double p = kExpCoeff[13];
    for (int i = 12; i >= 0; --i) p = std::fma(p, r, kExpCoeff[i]);
    const int k = static_cast<int>(kd);
    const int k1 = k >> 1;
    const int k2 = k - k1;
    return (p * pow2i(k1)) * pow2i(k2);
}

double det_log(double x) {
    if (std::isnan(x)) return x;
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    if (x < 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (x == std::numeric_limits<double>::infinity()) return x;
    int e0 = 0;
    if (x < 0x1p-1022) {
        x *= 0x1p54;
        e0 = -54;
    }
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    int e = static_cast<int>((bits >> 52) & 0x7FF) - 1022 + e0;
    double m = std::bit_cast<double>((bits & 0xFFFFFFFFFFFFFull) | 0x3FE0000000000000ull);
    if (m < kSqrtHalf) {
        m += m;
        e -= 1;
    }
    const double s = (m - 1.0) / (m + 1.0);
    const double z = s * s;
    double p = kLogCoeff[8];
    for (int i = 7; i >= 0; --i) p = std::fma(p, z, kLogCoeff[i]);
    const double t = 2.0 * s;
    const double q = t * z;
    double res = std::fma(q, p, t);
    const double ed = static_cast<double>(e);
    res = std::fma(ed, kLn2Lo, res);
    res = std::fma(ed, kLn2Hi, res);
    return res;
}

double det_cos(double x) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    const double kd = std::nearbyint(x * kTwoOverPi);
    double r = std::fma(kd, -kPio2Hi, x);
    r = std::fma(kd, -kPio2Lo, r);
    const double z = r * r;
    double pc = kCosCoeff[8];
    for (int i = 7; i >= 0; --i) pc = std::fma(pc, z, kCosCoeff[i]);
    double ps = kSinCoeff[8];
    for (int i = 7; i >= 0; --i) ps = std::fma(ps, z, kSinCoeff[i]);
    const double sinr = r * ps;
    switch (static_cast<long long>(kd) & 3) {
        case 0: return pc;
        case 1: return -sinr;
        case 2: return -pc;
        default: return sinr;
    }
}

double det_pow(double base, double exponent) {
    if (exponent == 2.0) return base * base;
    if (exponent == 3.0) return (base * base) * base;
    if (exponent == 4.0) {
        const double t = base * base;
        return t * t;
    }
    if (exponent == -2.0) return 1.0 / (base * base);
    if (exponent == -3.0) return 1.0 / ((base * base) * base);
    if (exponent == -4.0) {
        const double t = base * base;
        return 1.0 / (t * t);
    }
    return det_exp(exponent * det_log(base));
}

namespace detail {

void scalar_fill_u01(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream_id,
                     std::uint32_t seq0, double* out, std::size_t n) {
    const PhiloxKey key = make_key(seed);
    std::uint32_t seq = seq0;
    std::size_t i = 0;
    while (i < n) {
        const auto blk = philox_block(seq++, purpose, stream_id, key);
        const std::uint64_t a = (static_cast<std::uint64_t>(blk[0]) << 32) | blk[1];
        out[i++] = static_cast<double>(a >> 12) * 0x1.0p-52;
        if (i == n) break;
        const std::uint64_t b = (static_cast<std::uint64_t>(blk[2]) << 32) | blk[3];
        out[i++] = static_cast<double>(b >> 12) * 0x1.0p-52;
    }
}

void scalar_vexp(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = det_exp(x[i]);
}

void scalar_vlog(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = det_log(x[i]);
}

void scalar_vcos(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = det_cos(x[i]);
}

} // namespace detail

} // namespace wpr::sim::batch
