// AVX2 variants of the batch kernels. Each routine reproduces the scalar
// reference in src/batch_scalar.cpp operation for operation (same fma chains,
// same rounding steps, same special-case values), so outputs are bit-identical
// to the scalar backend; tails fall back to the scalar singles.

#include "wprelay/sim/batch.hpp"

#include "batch_kernels_detail.hpp"
#include "wprelay/sim/rng.hpp"

#include <immintrin.h>

#include <cstdint>
#include <limits>

namespace wpr::sim::batch::detail {

namespace {

constexpr int kRoundNearest = _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC;

// 32x32->64 multiply of every dword lane against a broadcast multiplier,
// producing hi/lo dword vectors in lane order.
inline void mulhilo8(__m256i a, __m256i m, __m256i& hi, __m256i& lo) {
    const __m256i even = _mm256_mul_epu32(a, m);
    const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), m);
    lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

// (q >> 12) * 2^-52 for four packed u64 lanes; exact, mirrors the scalar
// integer-to-double conversion.
inline __m256d u64_to_unit(__m256i q) {
    const __m256i shifted = _mm256_srli_epi64(q, 12);
    const __m256d magic = _mm256_set1_pd(0x1.0p52);
    const __m256d asdbl = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(shifted, _mm256_set1_epi64x(0x4330000000000000LL))),
        magic);
    return _mm256_mul_pd(asdbl, _mm256_set1_pd(0x1.0p-52));
}

// 2^k for int32 exponents already clamped to the safe split range.
inline __m256d pow2_from_epi32(__m128i k) {
    const __m256i k64 = _mm256_cvtepi32_epi64(k);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_castsi256_pd(bits);
}

// Low dwords of the four qword lanes, as a double vector (exact for small ints).
inline __m256d epi64_low_to_pd(__m256i v) {
    const __m256i packed = _mm256_permutevar8x32_epi32(v, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
    return _mm256_cvtepi32_pd(_mm256_castsi256_si128(packed));
}

} // namespace

void avx2_fill_u01(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream_id,
                   std::uint32_t seq0, double* out, std::size_t n) {
    const PhiloxKey key = make_key(seed);
    const __m256i m0 = _mm256_set1_epi32(static_cast<int>(0xD2511F53u));
    const __m256i m1 = _mm256_set1_epi32(static_cast<int>(0xCD9E8D57u));
    const __m256i w0 = _mm256_set1_epi32(static_cast<int>(0x9E3779B9u));
    const __m256i w1 = _mm256_set1_epi32(static_cast<int>(0xBB67AE85u));
    const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
    std::uint32_t seq = seq0;
    std::size_t i = 0;
    while (n - i >= 16) {
        // Eight counter blocks in SoA form.
        __m256i x0 = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(seq)), lane);
        __m256i x1 = _mm256_set1_epi32(static_cast<int>(purpose));
        __m256i x2 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(stream_id)));
        __m256i x3 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(stream_id >> 32)));
        __m256i k0 = _mm256_set1_epi32(static_cast<int>(key.k0));
        __m256i k1 = _mm256_set1_epi32(static_cast<int>(key.k1));
        for (int round = 0; round < 10; ++round) {
            if (round) {
                k0 = _mm256_add_epi32(k0, w0);
                k1 = _mm256_add_epi32(k1, w1);
            }
            __m256i hi0, lo0, hi1, lo1;
            mulhilo8(x0, m0, hi0, lo0);
            mulhilo8(x2, m1, hi1, lo1);
            const __m256i nx0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), k0);
            const __m256i nx2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), k1);
            x1 = lo1;
            x3 = lo0;
            x0 = nx0;
            x2 = nx2;
        }
        // Per block b: first double from (x0<<32)|x1, second from (x2<<32)|x3.
        const __m256i a_lo = _mm256_unpacklo_epi32(x1, x0); // blocks 0,1 | 4,5
        const __m256i a_hi = _mm256_unpackhi_epi32(x1, x0); // blocks 2,3 | 6,7
        const __m256i b_lo = _mm256_unpacklo_epi32(x3, x2);
        const __m256i b_hi = _mm256_unpackhi_epi32(x3, x2);
        const __m256d da_lo = u64_to_unit(a_lo);
        const __m256d da_hi = u64_to_unit(a_hi);
        const __m256d db_lo = u64_to_unit(b_lo);
        const __m256d db_hi = u64_to_unit(b_hi);
        // Interleave back to block order [b0d0 b0d1 b1d0 b1d1 ...].
        const __m256d l0 = _mm256_unpacklo_pd(da_lo, db_lo); // A0 B0 | A4 B4
        const __m256d h0 = _mm256_unpackhi_pd(da_lo, db_lo); // A1 B1 | A5 B5
        const __m256d l1 = _mm256_unpacklo_pd(da_hi, db_hi); // A2 B2 | A6 B6
        const __m256d h1 = _mm256_unpackhi_pd(da_hi, db_hi); // A3 B3 | A7 B7
        _mm256_storeu_pd(out + i + 0, _mm256_permute2f128_pd(l0, h0, 0x20));
        _mm256_storeu_pd(out + i + 4, _mm256_permute2f128_pd(l1, h1, 0x20));
        _mm256_storeu_pd(out + i + 8, _mm256_permute2f128_pd(l0, h0, 0x31));
        _mm256_storeu_pd(out + i + 12, _mm256_permute2f128_pd(l1, h1, 0x31));
        seq += 8;
        i += 16;
    }
    if (i < n) scalar_fill_u01(seed, purpose, stream_id, seq, out + i, n - i);
}

void avx2_vexp(const double* x, double* out, std::size_t n) {
    const __m256d log2e = _mm256_set1_pd(kLog2E);
    const __m256d nln2hi = _mm256_set1_pd(-kLn2Hi);
    const __m256d nln2lo = _mm256_set1_pd(-kLn2Lo);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        __m256d kd = _mm256_round_pd(_mm256_mul_pd(v, log2e), kRoundNearest);
        kd = _mm256_max_pd(kd, _mm256_set1_pd(-1075.0));
        kd = _mm256_min_pd(kd, _mm256_set1_pd(1024.0));
        __m256d r = _mm256_fmadd_pd(kd, nln2hi, v);
        r = _mm256_fmadd_pd(kd, nln2lo, r);
        __m256d p = _mm256_set1_pd(kExpCoeff[13]);
        for (int c = 12; c >= 0; --c) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kExpCoeff[c]));
        const __m128i ki = _mm256_cvtpd_epi32(kd);
        const __m128i k1 = _mm_srai_epi32(ki, 1);
        const __m128i k2 = _mm_sub_epi32(ki, k1);
        __m256d res = _mm256_mul_pd(_mm256_mul_pd(p, pow2_from_epi32(k1)), pow2_from_epi32(k2));
        res = _mm256_blendv_pd(res, _mm256_set1_pd(std::numeric_limits<double>::infinity()),
                               _mm256_cmp_pd(v, _mm256_set1_pd(kExpOverflow), _CMP_GT_OQ));
        res = _mm256_blendv_pd(res, _mm256_setzero_pd(),
                               _mm256_cmp_pd(v, _mm256_set1_pd(kExpUnderflow), _CMP_LT_OQ));
        res = _mm256_blendv_pd(res, v, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) out[i] = det_exp(x[i]);
}

void avx2_vlog(const double* x, double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d denorm = _mm256_cmp_pd(v, _mm256_set1_pd(0x1p-1022), _CMP_LT_OQ);
        const __m256d xs = _mm256_blendv_pd(v, _mm256_mul_pd(v, _mm256_set1_pd(0x1p54)), denorm);
        const __m256i bits = _mm256_castpd_si256(xs);
        __m256i e = _mm256_sub_epi64(
            _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7FF)),
            _mm256_set1_epi64x(1022));
        e = _mm256_add_epi64(e, _mm256_and_si256(_mm256_castpd_si256(denorm),
                                                 _mm256_set1_epi64x(-54)));
        __m256d m = _mm256_castsi256_pd(
            _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0xFFFFFFFFFFFFFLL)),
                            _mm256_set1_epi64x(0x3FE0000000000000LL)));
        const __m256d small = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrtHalf), _CMP_LT_OQ);
        m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), small);
        e = _mm256_add_epi64(e, _mm256_and_si256(_mm256_castpd_si256(small),
                                                 _mm256_set1_epi64x(-1)));
        const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
        const __m256d z = _mm256_mul_pd(s, s);
        __m256d p = _mm256_set1_pd(kLogCoeff[8]);
        for (int c = 7; c >= 0; --c) p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(kLogCoeff[c]));
        const __m256d t = _mm256_mul_pd(_mm256_set1_pd(2.0), s);
        const __m256d q = _mm256_mul_pd(t, z);
        __m256d res = _mm256_fmadd_pd(q, p, t);
        const __m256d ed = epi64_low_to_pd(e);
        res = _mm256_fmadd_pd(ed, _mm256_set1_pd(kLn2Lo), res);
        res = _mm256_fmadd_pd(ed, _mm256_set1_pd(kLn2Hi), res);
        res = _mm256_blendv_pd(res, _mm256_sub_pd(_mm256_setzero_pd(), inf),
                               _mm256_cmp_pd(v, _mm256_setzero_pd(), _CMP_EQ_OQ));
        res = _mm256_blendv_pd(res, _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN()),
                               _mm256_cmp_pd(v, _mm256_setzero_pd(), _CMP_LT_OQ));
        res = _mm256_blendv_pd(res, inf, _mm256_cmp_pd(v, inf, _CMP_EQ_OQ));
        res = _mm256_blendv_pd(res, v, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) out[i] = det_log(x[i]);
}

void avx2_vcos(const double* x, double* out, std::size_t n) {
    const __m256d nhi = _mm256_set1_pd(-kPio2Hi);
    const __m256d nlo = _mm256_set1_pd(-kPio2Lo);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d kd = _mm256_round_pd(_mm256_mul_pd(v, _mm256_set1_pd(kTwoOverPi)),
                                           kRoundNearest);
        __m256d r = _mm256_fmadd_pd(kd, nhi, v);
        r = _mm256_fmadd_pd(kd, nlo, r);
        const __m256d z = _mm256_mul_pd(r, r);
        __m256d pc = _mm256_set1_pd(kCosCoeff[8]);
        for (int c = 7; c >= 0; --c) pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kCosCoeff[c]));
        __m256d ps = _mm256_set1_pd(kSinCoeff[8]);
        for (int c = 7; c >= 0; --c) ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kSinCoeff[c]));
        const __m256d sinr = _mm256_mul_pd(r, ps);
        const __m128i qi = _mm_and_si128(_mm256_cvtpd_epi32(kd), _mm_set1_epi32(3));
        const __m128i oddi = _mm_cmpeq_epi32(_mm_and_si128(qi, _mm_set1_epi32(1)),
                                             _mm_set1_epi32(1));
        const __m128i negi = _mm_cmpeq_epi32(
            _mm_and_si128(_mm_add_epi32(qi, _mm_set1_epi32(1)), _mm_set1_epi32(2)),
            _mm_set1_epi32(2));
        const __m256d odd_mask = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(oddi));
        const __m256d neg_mask = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(negi));
        __m256d res = _mm256_blendv_pd(pc, sinr, odd_mask);
        res = _mm256_xor_pd(res, _mm256_and_pd(neg_mask, _mm256_set1_pd(-0.0)));
        // Non-finite inputs: v - v is NaN exactly there.
        const __m256d bad = _mm256_cmp_pd(_mm256_sub_pd(v, v), _mm256_setzero_pd(), _CMP_NEQ_UQ);
        res = _mm256_blendv_pd(res, _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN()), bad);
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) out[i] = det_cos(x[i]);
}

} // namespace wpr::sim::batch::detail
