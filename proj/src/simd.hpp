#pragma once

// Fixed-width lanes built on GCC/Clang vector extensions. On targets without
// 512-bit registers the compiler splits the operations; results are identical
// because every operation is lane-wise IEEE arithmetic.

#include <cmath>
#include <cstdint>

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

#include "thermowalk/philox.hpp"

namespace thermowalk::simd {

inline constexpr int kWidth = 8;

using vd = double __attribute__((vector_size(kWidth * sizeof(double))));
using vu = std::uint64_t __attribute__((vector_size(kWidth * sizeof(std::uint64_t))));
using vi = std::int64_t __attribute__((vector_size(kWidth * sizeof(std::int64_t))));

inline vd splat(double v) { return vd{} + v; }

/// a * b + c with a single rounding, identical for scalars and lanes.
inline double fmadd(double a, double b, double c) { return std::fma(a, b, c); }

inline vd fmadd(vd a, vd b, vd c) {
#if defined(__AVX512F__)
    return reinterpret_cast<vd>(_mm512_fmadd_pd(reinterpret_cast<__m512d>(a), reinterpret_cast<__m512d>(b),
                                                 reinterpret_cast<__m512d>(c)));
#else
    vd r;
    for (int l = 0; l < kWidth; ++l) r[l] = std::fma(a[l], b[l], c[l]);
    return r;
#endif
}

inline vd fmadd(vd a, vd b, double c) { return fmadd(a, b, splat(c)); }

inline bool any(vi mask) {
#if defined(__AVX512F__)
    return _mm512_test_epi64_mask(reinterpret_cast<__m512i>(mask), reinterpret_cast<__m512i>(mask)) != 0;
#else
    for (int l = 0; l < kWidth; ++l)
        if (mask[l]) return true;
    return false;
#endif
}

inline bool all(vi mask) {
#if defined(__AVX512F__)
    return _mm512_test_epi64_mask(reinterpret_cast<__m512i>(mask), reinterpret_cast<__m512i>(mask)) == 0xFF;
#else
    for (int l = 0; l < kWidth; ++l)
        if (!mask[l]) return false;
    return true;
#endif
}

/// Full 64-bit product of the low 32 bits of each lane with m.
inline vu mul_wide(vu a, std::uint32_t m) {
#if defined(__AVX512F__)
    return reinterpret_cast<vu>(_mm512_mul_epu32(reinterpret_cast<__m512i>(a), _mm512_set1_epi64(m)));
#else
    return (a & 0xFFFFFFFFull) * std::uint64_t{m};
#endif
}

/// Philox4x32-10 on eight counters at once. Returns words 0-1 and 2-3 of
/// each block packed as (hi << 32) | lo, matching rng::step_bits.
inline void philox_pair(vu block, vu stream, std::uint64_t seed, vu& even, vu& odd) {
    constexpr std::uint64_t lo = 0xFFFFFFFFull;
    vu c0 = block & lo, c1 = block >> 32, c2 = stream & lo, c3 = stream >> 32;
    std::uint32_t k0 = static_cast<std::uint32_t>(seed), k1 = static_cast<std::uint32_t>(seed >> 32);
#pragma GCC unroll 10
    for (int round = 0; round < 10; ++round) {
        const vu p0 = mul_wide(c0, Philox4x32::kMul0);
        const vu p1 = mul_wide(c2, Philox4x32::kMul1);
        const vu n0 = (p1 >> 32) ^ c1 ^ std::uint64_t{k0};
        const vu n2 = (p0 >> 32) ^ c3 ^ std::uint64_t{k1};
        c1 = p1 & lo;
        c3 = p0 & lo;
        c0 = n0;
        c2 = n2;
        k0 += Philox4x32::kWeyl0;
        k1 += Philox4x32::kWeyl1;
    }
    even = (c0 << 32) | c1;
    odd = (c2 << 32) | c3;
}

/// Taylor polynomials of sin and cos on |b| <= pi/4 (error below 2e-16).
template <class V>
inline void sin_cos_quarter(V b, V& sin_b, V& cos_b) {
    const V b2 = b * b;
    V p = fmadd(b2, V{} + (-1.0 / 1307674368000.0), 1.0 / 6227020800.0);
    p = fmadd(b2, p, -1.0 / 39916800.0);
    p = fmadd(b2, p, 1.0 / 362880.0);
    p = fmadd(b2, p, -1.0 / 5040.0);
    p = fmadd(b2, p, 1.0 / 120.0);
    p = fmadd(b2, p, -1.0 / 6.0);
    sin_b = fmadd(b * b2, p, b);
    V q = fmadd(b2, V{} + (1.0 / 20922789888000.0), -1.0 / 87178291200.0);
    q = fmadd(b2, q, 1.0 / 479001600.0);
    q = fmadd(b2, q, -1.0 / 3628800.0);
    q = fmadd(b2, q, 1.0 / 40320.0);
    q = fmadd(b2, q, -1.0 / 720.0);
    q = fmadd(b2, q, 1.0 / 24.0);
    q = fmadd(b2, q, -0.5);
    cos_b = fmadd(b2, q, V{} + 1.0);
}

inline constexpr double kHalfPi = 1.57079632679489661923;
inline constexpr double kSqrtHalf = 0.70710678118654752440;

/// Angle 2 pi w / 2^64 split as quadrant (top two bits) plus pi/4 + b.
inline void direction(vu w, vd& cos_out, vd& sin_out) {
    const vu q = w >> 62;
    const vd t = __builtin_convertvector((w << 2) >> 11, vd) * 0x1p-53;
    const vd b = (t - 0.5) * kHalfPi;
    vd sb, cb;
    sin_cos_quarter(b, sb, cb);
    const vd s0 = (sb + cb) * kSqrtHalf;
    const vd c0 = (cb - sb) * kSqrtHalf;
    const vi odd = reinterpret_cast<vi>((q & 1) != 0);
    const vi high = reinterpret_cast<vi>((q & 2) != 0);
    const vd s1 = odd ? c0 : s0;
    const vd c1 = odd ? -s0 : c0;
    sin_out = high ? -s1 : s1;
    cos_out = high ? -c1 : c1;
}

inline void direction(std::uint64_t w, double& cos_out, double& sin_out) {
    const std::uint64_t q = w >> 62;
    const double t = static_cast<double>((w << 2) >> 11) * 0x1p-53;
    const double b = (t - 0.5) * kHalfPi;
    double sb, cb;
    sin_cos_quarter(b, sb, cb);
    const double s0 = (sb + cb) * kSqrtHalf;
    const double c0 = (cb - sb) * kSqrtHalf;
    const double s1 = (q & 1) ? c0 : s0;
    const double c1 = (q & 1) ? -s0 : c0;
    sin_out = (q & 2) ? -s1 : s1;
    cos_out = (q & 2) ? -c1 : c1;
}

/// +1 or -1 from the top bit.
inline vd sign_from_bits(vu w) {
    const vi up = reinterpret_cast<vi>((w >> 63) != 0);
    return up ? splat(1.0) : splat(-1.0);
}

}  // namespace thermowalk::simd
