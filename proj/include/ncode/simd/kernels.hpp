#pragma once

// Inner-loop kernels shared by coding, clustering and kernel construction.
//
// Every kernel has a scalar reference implementation. Vector variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled separately and chosen
// once at runtime from the CPU feature set. Setting NCODE_SIMD=scalar (or
// avx2 / neon) in the environment pins the choice.
//
// All variants compute a pair's inner product with a fixed reduction order,
// so a given ISA is bit-reproducible and dot(a, b) == dot(b, a) exactly.
// Variants agree with each other to rounding (see test_simd_equivalence).

#include <cstddef>
#include <string_view>

namespace ncode::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
    Isa isa;

    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*squared_distance)(const double* a, const double* b, std::size_t n);

    /// out[i + j * n_a] = max(0, <a_i, b_j> - alpha) where a_i, b_j are
    /// contiguous columns of length dim. Without clamping, the raw
    /// products minus alpha are stored.
    void (*threshold_products)(const double* a, std::size_t n_a, const double* b, std::size_t n_b,
                               std::size_t dim, double alpha, bool clamp, double* out);

    /// Symmetric Gram matrix of n contiguous columns: out[i + j * n] = <a_i, a_j>.
    /// Only one triangle is computed; the other is mirrored, so the result
    /// is exactly symmetric.
    void (*gram)(const double* a, std::size_t n, std::size_t dim, double* out);
};

[[nodiscard]] bool supported(Isa isa) noexcept;

/// Table for a specific ISA; throws ArgumentError when the CPU or build lacks it.
[[nodiscard]] const KernelTable& table(Isa isa);

/// Table selected for this process (first call decides).
[[nodiscard]] const KernelTable& active();

[[nodiscard]] std::string_view name(Isa isa) noexcept;

namespace detail {
const KernelTable& scalar_table() noexcept;
#if defined(NCODE_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(NCODE_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif
}  // namespace detail

}  // namespace ncode::simd
