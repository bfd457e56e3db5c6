#include "ncode/simd/kernels.hpp"

#include "ncode/types.hpp"

#include <cstdlib>
#include <string>

namespace ncode::simd {

bool supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(NCODE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(NCODE_HAVE_NEON)
            return true;  // mandatory on AArch64
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& table(Isa isa) {
    if (!supported(isa)) {
        throw ArgumentError("SIMD variant '" + std::string(name(isa)) + "' is not available on this machine");
    }
    switch (isa) {
#if defined(NCODE_HAVE_AVX2)
        case Isa::avx2:
            return detail::avx2_table();
#endif
#if defined(NCODE_HAVE_NEON)
        case Isa::neon:
            return detail::neon_table();
#endif
        default:
            return detail::scalar_table();
    }
}

namespace {

const KernelTable& select() {
    if (const char* forced = std::getenv("NCODE_SIMD")) {
        const std::string value{forced};
        for (const Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (value == name(isa) && supported(isa)) {
                return table(isa);
            }
        }
    }
    for (const Isa isa : {Isa::avx2, Isa::neon}) {
        if (supported(isa)) {
            return table(isa);
        }
    }
    return detail::scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& chosen = select();
    return chosen;
}

std::string_view name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
    }
    return "unknown";
}

}  // namespace ncode::simd
