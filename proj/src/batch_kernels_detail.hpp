#pragma once
// Constants and backend entry points shared by the scalar and AVX2 kernel
// translation units. Both backends must consume exactly these values and the
// operation orders documented next to them; that is what makes their outputs
// bit-identical.

#include <cstddef>
#include <cstdint>

namespace wpr::sim::batch::detail {

// --- exp ---------------------------------------------------------------
// x = k*ln2 + r via round-to-nearest k, Cody-Waite two-part ln2, then a
// degree-13 Taylor polynomial in r evaluated by an fma Horner chain, scaled
// by 2^k in two exact halves so subnormal results round correctly.
inline constexpr double kLog2E = 0x1.71547652b82fep+0;
inline constexpr double kLn2Hi = 0x1.62e42fee00000p-1;
inline constexpr double kLn2Lo = 0x1.a39ef35793c76p-33;
inline constexpr double kExpOverflow = 709.782712893384;   // above: +inf
inline constexpr double kExpUnderflow = -745.133219101941; // below: 0
inline constexpr double kExpCoeff[14] = {
    1.0,
    1.0,
    1.0 / 2,
    1.0 / 6,
    1.0 / 24,
    1.0 / 120,
    1.0 / 720,
    1.0 / 5040,
    1.0 / 40320,
    1.0 / 362880,
    1.0 / 3628800,
    1.0 / 39916800,
    1.0 / 479001600,
    1.0 / 6227020800.0,
};

// --- log ---------------------------------------------------------------
// x = m * 2^e with m in [sqrt(1/2), sqrt(2)), then atanh form
// log m = 2s + s*z*P(z), s = (m-1)/(m+1), z = s^2, P a degree-8 Horner
// chain in z; e*ln2 is added back low part first.
inline constexpr double kSqrtHalf = 0x1.6a09e667f3bcdp-1;
inline constexpr double kLogCoeff[9] = {
    1.0 / 3, 1.0 / 5, 1.0 / 7, 1.0 / 9, 1.0 / 11,
    1.0 / 13, 1.0 / 15, 1.0 / 17, 1.0 / 19,
};

// --- cos ---------------------------------------------------------------
// x = k*(pi/2) + r via round-to-nearest k and a two-part pi/2 (fine for the
// |x| <~ 1e6 domain the simulator uses), quadrant from k mod 4, then Taylor
// kernels for cos(r) and sin(r).
inline constexpr double kTwoOverPi = 0x1.45f306dc9c883p-1;
inline constexpr double kPio2Hi = 0x1.921fb54400000p+0;
inline constexpr double kPio2Lo = 0x1.0b4611a626331p-34;
inline constexpr double kCosCoeff[9] = {
    1.0,
    -1.0 / 2,
    1.0 / 24,
    -1.0 / 720,
    1.0 / 40320,
    -1.0 / 3628800,
    1.0 / 479001600,
    -1.0 / 87178291200.0,
    1.0 / 20922789888000.0,
};
inline constexpr double kSinCoeff[9] = {
    1.0,
    -1.0 / 6,
    1.0 / 120,
    -1.0 / 5040,
    1.0 / 362880,
    -1.0 / 39916800,
    1.0 / 6227020800.0,
    -1.0 / 1307674368000.0,
    1.0 / 355687428096000.0,
};

// Scalar reference backend (always built).
void scalar_fill_u01(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream_id,
                     std::uint32_t seq0, double* out, std::size_t n);
void scalar_vexp(const double* x, double* out, std::size_t n);
void scalar_vlog(const double* x, double* out, std::size_t n);
void scalar_vcos(const double* x, double* out, std::size_t n);

#if defined(WPRELAY_HAVE_AVX2)
void avx2_fill_u01(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream_id,
                   std::uint32_t seq0, double* out, std::size_t n);
void avx2_vexp(const double* x, double* out, std::size_t n);
void avx2_vlog(const double* x, double* out, std::size_t n);
void avx2_vcos(const double* x, double* out, std::size_t n);
#endif

} // namespace wpr::sim::batch::detail
