// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "ncode/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace ncode::simd::detail {
namespace {

inline double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    const __m128d swapped = _mm_unpackhi_pd(pair, pair);
    return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

// Two independent 4-lane accumulators, combined once at the end.
inline double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        i += 4;
    }
    double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    if (i + 4 <= n) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        i += 4;
    }
    double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

double dot_entry(const double* a, const double* b, std::size_t n) { return dot_avx2(a, b, n); }

void threshold_products_avx2(const double* a, std::size_t n_a, const double* b, std::size_t n_b,
                             std::size_t dim, double alpha, bool clamp, double* out) {
    for (std::size_t j = 0; j < n_b; ++j) {
        const double* bj = b + j * dim;
        double* column = out + j * n_a;
        for (std::size_t i = 0; i < n_a; ++i) {
            const double v = dot_avx2(a + i * dim, bj, dim) - alpha;
            column[i] = clamp ? std::max(0.0, v) : v;
        }
    }
}

void gram_avx2(const double* a, std::size_t n, std::size_t dim, double* out) {
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            const double v = dot_avx2(a + i * dim, a + j * dim, dim);
            out[i + j * n] = v;
            out[j + i * n] = v;
        }
    }
}

constexpr KernelTable kAvx2{Isa::avx2, dot_entry, squared_distance_avx2, threshold_products_avx2, gram_avx2};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace ncode::simd::detail
