#include "ncode/simd/kernels.hpp"

#include <arm_neon.h>

#include <algorithm>

namespace ncode::simd::detail {
namespace {

inline double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double squared_distance_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        const float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
        acc0 = vfmaq_f64(acc0, d0, d0);
        acc1 = vfmaq_f64(acc1, d1, d1);
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

double dot_entry(const double* a, const double* b, std::size_t n) { return dot_neon(a, b, n); }

void threshold_products_neon(const double* a, std::size_t n_a, const double* b, std::size_t n_b,
                             std::size_t dim, double alpha, bool clamp, double* out) {
    for (std::size_t j = 0; j < n_b; ++j) {
        for (std::size_t i = 0; i < n_a; ++i) {
            const double v = dot_neon(a + i * dim, b + j * dim, dim) - alpha;
            out[i + j * n_a] = clamp ? std::max(0.0, v) : v;
        }
    }
}

void gram_neon(const double* a, std::size_t n, std::size_t dim, double* out) {
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            const double v = dot_neon(a + i * dim, a + j * dim, dim);
            out[i + j * n] = v;
            out[j + i * n] = v;
        }
    }
}

constexpr KernelTable kNeon{Isa::neon, dot_entry, squared_distance_neon, threshold_products_neon, gram_neon};

}  // namespace

const KernelTable& neon_table() noexcept { return kNeon; }

}  // namespace ncode::simd::detail
