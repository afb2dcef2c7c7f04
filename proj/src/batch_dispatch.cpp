#include "wprelay/sim/batch.hpp"

#include "batch_kernels_detail.hpp"

#include <atomic>

namespace wpr::sim::batch {

namespace {

std::atomic<bool> g_force_scalar{false};

bool cpu_has_avx2() {
#if defined(WPRELAY_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const bool g_cpu_avx2 = cpu_has_avx2();

inline bool use_avx2() {
    return g_cpu_avx2 && !g_force_scalar.load(std::memory_order_relaxed);
}

} // namespace

bool avx2_compiled_in() {
#if defined(WPRELAY_HAVE_AVX2)
    return true;
#else
    return false;
#endif
}

Backend active_backend() {
    return use_avx2() ? Backend::avx2 : Backend::scalar;
}

void force_scalar(bool on) {
    g_force_scalar.store(on, std::memory_order_relaxed);
}

void fill_u01(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream_id,
              std::uint32_t seq0, double* out, std::size_t n) {
#if defined(WPRELAY_HAVE_AVX2)
    if (use_avx2()) {
        detail::avx2_fill_u01(seed, purpose, stream_id, seq0, out, n);
        return;
    }
#endif
    detail::scalar_fill_u01(seed, purpose, stream_id, seq0, out, n);
}

void vexp(const double* x, double* out, std::size_t n) {
#if defined(WPRELAY_HAVE_AVX2)
    if (use_avx2()) {
        detail::avx2_vexp(x, out, n);
        return;
    }
#endif
    detail::scalar_vexp(x, out, n);
}

void vlog(const double* x, double* out, std::size_t n) {
#if defined(WPRELAY_HAVE_AVX2)
    if (use_avx2()) {
        detail::avx2_vlog(x, out, n);
        return;
    }
#endif
    detail::scalar_vlog(x, out, n);
}

void vcos(const double* x, double* out, std::size_t n) {
#if defined(WPRELAY_HAVE_AVX2)
    if (use_avx2()) {
        detail::avx2_vcos(x, out, n);
        return;
    }
#endif
    detail::scalar_vcos(x, out, n);
}

void fill_exponentials(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream_id,
                       std::uint32_t seq0, double* out, std::size_t n) {
    fill_u01(seed, purpose, stream_id, seq0, out, n);
    // 1 - u is exact for u in [0,1) at 52-bit granularity, and the final
    // negation is a sign flip, so the result is backend-independent as long
    // as vlog is.
    for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 - out[i];
    vlog(out, out, n);
    for (std::size_t i = 0; i < n; ++i) out[i] = -out[i];
}

void vpow(const double* base, double exponent, double* out, std::size_t n) {
    // Keep the branch structure identical to det_pow so scalar singles and
    // batched calls agree bitwise.
    if (exponent == 2.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = base[i] * base[i];
        return;
    }
    if (exponent == 3.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = (base[i] * base[i]) * base[i];
        return;
    }
    if (exponent == 4.0) {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = base[i] * base[i];
            out[i] = t * t;
        }
        return;
    }
    if (exponent == -2.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / (base[i] * base[i]);
        return;
    }
    if (exponent == -3.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / ((base[i] * base[i]) * base[i]);
        return;
    }
    if (exponent == -4.0) {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = base[i] * base[i];
            out[i] = 1.0 / (t * t);
        }
        return;
    }
    vlog(base, out, n);
    for (std::size_t i = 0; i < n; ++i) out[i] *= exponent;
    vexp(out, out, n);
}

} // namespace wpr::sim::batch
