#include "annolattice/bitkernels.hpp"

#include <atomic>
#include <bit>

namespace annolattice::kernels {

namespace {

void scalar_and(std::uint64_t* dst, const std::uint64_t* a,
                const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void scalar_or(std::uint64_t* dst, const std::uint64_t* a,
               const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void scalar_andnot(std::uint64_t* dst, const std::uint64_t* a,
                   const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

bool scalar_is_subset(const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

bool scalar_equal(const std::uint64_t* a, const std::uint64_t* b,
                  std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool scalar_is_zero(const std::uint64_t* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i]) return false;
    return true;
}

std::uint64_t scalar_popcount(const std::uint64_t* a, std::size_t n) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += std::popcount(a[i]);
    return c;
}

std::uint64_t scalar_popcount_and(const std::uint64_t* a,
                                  const std::uint64_t* b, std::size_t n) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += std::popcount(a[i] & b[i]);
    return c;
}

constexpr Ops kScalarOps = {
    scalar_and,    scalar_or,      scalar_andnot,
    scalar_is_subset, scalar_equal, scalar_is_zero,
    scalar_popcount,  scalar_popcount_and,
    "scalar",
};

std::atomic<const Ops*> g_active{nullptr};

const Ops* pick_default() {
    if (avx2_available()) return &avx2_ops();
    return &kScalarOps;
}

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

#if !ANNOLATTICE_HAVE_AVX2
bool avx2_available() { return false; }
const Ops& avx2_ops() { return kScalarOps; }
#endif

const Ops& active() {
    const Ops* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        ops = pick_default();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

bool select(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            g_active.store(&kScalarOps, std::memory_order_release);
            return true;
        case Backend::avx2:
            if (!avx2_available()) return false;
            g_active.store(&avx2_ops(), std::memory_order_release);
            return true;
    }
    return false;
}

}  // namespace annolattice::kernels
