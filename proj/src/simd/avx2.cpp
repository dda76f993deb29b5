// SPDX-License-Identifier: Apache-2.0
// AVX2/FMA kernels. Compiled with -mavx2 -mfma; only reached after a runtime
// CPU check in dispatch.cpp.
#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "hystk/simd.hpp"

namespace hystk::simd::avx2 {

namespace {
inline double hsum(__m256d v) noexcept
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}
}  // namespace

void gemm(double const* a, double const* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) noexcept
{
    std::size_t const n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < m; ++i)
    {
        double* crow = c + i * n;
        for (std::size_t j = 0; j < n4; j += 4)
        {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t l = 0; l < k; ++l)
            {
                __m256d ail = _mm256_broadcast_sd(a + i * k + l);
                acc = _mm256_fmadd_pd(ail, _mm256_loadu_pd(b + l * n + j),
                                      acc);
            }
            _mm256_storeu_pd(crow + j, acc);
        }
        for (std::size_t j = n4; j < n; ++j)
        {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l)
                s += a[i * k + l] * b[l * n + j];
            crow[j] = s;
        }
    }
}

void axpy(double alpha, double const* x, double* y, std::size_t n) noexcept
{
    __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i)
        y[i] += alpha * x[i];
}

double dot(double const* a, double const* b, std::size_t n) noexcept
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                              acc);
    double s = hsum(acc);
    for (; i < n; ++i)
        s += a[i] * b[i];
    return s;
}

void halfspace_max_slack(double const* normals, double const* offsets,
                         std::size_t planes, std::size_t dim,
                         double const* coords, std::size_t count,
                         double* out) noexcept
{
    double const ninf = -std::numeric_limits<double>::infinity();
    std::size_t const c4 = count & ~std::size_t{3};
    for (std::size_t p = 0; p < c4; p += 4)
    {
        __m256d best = _mm256_set1_pd(ninf);
        for (std::size_t h = 0; h < planes; ++h)
        {
            __m256d s = _mm256_set1_pd(-offsets[h]);
            for (std::size_t d = 0; d < dim; ++d)
            {
                __m256d nd = _mm256_broadcast_sd(normals + h * dim + d);
                s = _mm256_fmadd_pd(nd, _mm256_loadu_pd(coords + d * count + p),
                                    s);
            }
            best = _mm256_max_pd(best, s);
        }
        _mm256_storeu_pd(out + p, best);
    }
    for (std::size_t p = c4; p < count; ++p)
    {
        double best = ninf;
        for (std::size_t h = 0; h < planes; ++h)
        {
            double s = -offsets[h];
            for (std::size_t d = 0; d < dim; ++d)
                s += normals[h * dim + d] * coords[d * count + p];
            best = std::max(best, s);
        }
        out[p] = best;
    }
}

}  // namespace hystk::simd::avx2
