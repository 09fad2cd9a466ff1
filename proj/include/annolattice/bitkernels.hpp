#pragma once

#include <cstddef>
#include <cstdint>

// Word-array kernels behind BitVec. All functions operate on arrays of
// 64-bit words of length n; callers keep bits past the logical size zero.
// The scalar implementations are the reference; vectorized variants must
// be bit-exact against them (see tests/test_kernels.cpp).

namespace annolattice::kernels {

struct Ops {
    void (*bit_and)(std::uint64_t* dst, const std::uint64_t* a,
                    const std::uint64_t* b, std::size_t n);
    void (*bit_or)(std::uint64_t* dst, const std::uint64_t* a,
                   const std::uint64_t* b, std::size_t n);
    // dst = a & ~b
    void (*bit_andnot)(std::uint64_t* dst, const std::uint64_t* a,
                       const std::uint64_t* b, std::size_t n);
    // a subset of b, i.e. (a & ~b) == 0
    bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t n);
    bool (*equal)(const std::uint64_t* a, const std::uint64_t* b,
                  std::size_t n);
    bool (*is_zero)(const std::uint64_t* a, std::size_t n);
    std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t n);
    std::uint64_t (*popcount_and)(const std::uint64_t* a,
                                  const std::uint64_t* b, std::size_t n);
    const char* name;
};

enum class Backend { scalar, avx2 };

const Ops& scalar_ops();

// True when the AVX2 kernels were compiled in and the CPU supports them.
bool avx2_available();
const Ops& avx2_ops();

// Runtime-selected kernel set; defaults to the best available backend.
const Ops& active();
// Returns false (and changes nothing) if the backend is unavailable.
bool select(Backend backend);

}  // namespace annolattice::kernels
