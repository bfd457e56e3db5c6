#include "ncode/simd/kernels.hpp"

#include <algorithm>

namespace ncode::simd::detail {
namespace {

double dot_ref(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double squared_distance_ref(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

void threshold_products_ref(const double* a, std::size_t n_a, const double* b, std::size_t n_b,
                            std::size_t dim, double alpha, bool clamp, double* out) {
    for (std::size_t j = 0; j < n_b; ++j) {
        const double* bj = b + j * dim;
        for (std::size_t i = 0; i < n_a; ++i) {
            const double v = dot_ref(a + i * dim, bj, dim) - alpha;
            out[i + j * n_a] = clamp ? std::max(0.0, v) : v;
        }
    }
}

void gram_ref(const double* a, std::size_t n, std::size_t dim, double* out) {
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            const double v = dot_ref(a + i * dim, a + j * dim, dim);
            out[i + j * n] = v;
            out[j + i * n] = v;
        }
    }
}

constexpr KernelTable kScalar{Isa::scalar, dot_ref, squared_distance_ref, threshold_products_ref, gram_ref};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace ncode::simd::detail
