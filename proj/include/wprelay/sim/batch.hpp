#pragma once
// Bulk elementwise kernels for the simulator's hot path: counter-based
// uniform fills and deterministic exp/log/cos/pow. A scalar reference
// implementation and an AVX2 variant are built from the same operation
// sequences (explicit fused multiply-adds, fixed evaluation order), so the
// two backends produce bit-identical results; the active one is picked at
// runtime. Reductions are never vectorized anywhere in the simulator.

#include <cstddef>
#include <cstdint>

namespace wpr::sim::batch {

enum class Backend { scalar, avx2 };

// Backend selected for subsequent calls (CPU support and build flags permitting).
Backend active_backend();
bool avx2_compiled_in();
// Test hook: pin the scalar backend. Not meant to be toggled concurrently
// with running fills.
void force_scalar(bool on);

// Writes n uniforms in [0,1) (52-bit resolution) from the Philox substream
// (seed, purpose, stream_id), starting at block seq0. Block b yields
// out[2b] and out[2b+1], so a fill is independent of how it is chunked.
void fill_u01(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream_id,
              std::uint32_t seq0, double* out, std::size_t n);

// Unit-mean exponentials: -log(1 - u) over the same substream.
void fill_exponentials(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream_id,
                       std::uint32_t seq0, double* out, std::size_t n);

// Elementwise transcendentals (in-place allowed: out may alias x).
void vexp(const double* x, double* out, std::size_t n);
void vlog(const double* x, double* out, std::size_t n);
// Accurate for |x| up to ~1e6; the simulator only passes angles in [0, 2pi).
void vcos(const double* x, double* out, std::size_t n);
// base[i]^exponent with small-integer exponents special-cased to plain
// multiplies; otherwise exp(exponent*log(base)).
void vpow(const double* base, double exponent, double* out, std::size_t n);

// Scalar singles with exactly the kernel sequences above; used for vector
// tails and for sequential RNG consumers.
double det_exp(double x);
double det_log(double x);
double det_cos(double x);
double det_pow(double base, double exponent);

} // namespace wpr::sim::batch
