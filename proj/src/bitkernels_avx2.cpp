// AVX2 variants of the word-array kernels. Compiled with -mavx2 only on
// x86-64 (see src/CMakeLists.txt); selection happens at runtime via CPUID
// so the same binary runs on pre-AVX2 hardware.

#include "annolattice/bitkernels.hpp"

#if ANNOLATTICE_HAVE_AVX2

#include <immintrin.h>

#include <bit>

namespace annolattice::kernels {

namespace {

inline __m256i load(const std::uint64_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(std::uint64_t* p, __m256i v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

void avx2_and(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void avx2_or(std::uint64_t* dst, const std::uint64_t* a,
             const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        store(dst + i, _mm256_or_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void avx2_andnot(std::uint64_t* dst, const std::uint64_t* a,
                 const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    // _mm256_andnot_si256(x, y) computes ~x & y
    for (; i + 4 <= n; i += 4)
        store(dst + i, _mm256_andnot_si256(load(b + i), load(a + i)));
    for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

bool avx2_is_subset(const std::uint64_t* a, const std::uint64_t* b,
                    std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i stray = _mm256_andnot_si256(load(b + i), load(a + i));
        if (!_mm256_testz_si256(stray, stray)) return false;
    }
    for (; i < n; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

bool avx2_equal(const std::uint64_t* a, const std::uint64_t* b,
                std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i diff = _mm256_xor_si256(load(a + i), load(b + i));
        if (!_mm256_testz_si256(diff, diff)) return false;
    }
    for (; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool avx2_is_zero(const std::uint64_t* a, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = load(a + i);
        if (!_mm256_testz_si256(v, v)) return false;
    }
    for (; i < n; ++i)
        if (a[i]) return false;
    return true;
}

// Nibble-LUT popcount (Mula): per-byte counts via PSHUFB, summed with SAD.
inline __m256i popcount256(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low_mask);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                  _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

std::uint64_t avx2_popcount(const std::uint64_t* a, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_epi64(acc, popcount256(load(a + i)));
    std::uint64_t c = static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
                      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
                      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
                      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
    for (; i < n; ++i) c += std::popcount(a[i]);
    return c;
}

std::uint64_t avx2_popcount_and(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_and_si256(load(a + i), load(b + i));
        acc = _mm256_add_epi64(acc, popcount256(v));
    }
    std::uint64_t c = static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
                      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
                      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
                      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
    for (; i < n; ++i) c += std::popcount(a[i] & b[i]);
    return c;
}

constexpr Ops kAvx2Ops = {
    avx2_and,    avx2_or,    avx2_andnot,
    avx2_is_subset, avx2_equal, avx2_is_zero,
    avx2_popcount,  avx2_popcount_and,
    "avx2",
};

}  // namespace

bool avx2_available() {
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok;
}

const Ops& avx2_ops() { return kAvx2Ops; }

}  // namespace annolattice::kernels

#endif  // ANNOLATTICE_HAVE_AVX2
