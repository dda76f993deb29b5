// SPDX-License-Identifier: Apache-2.0
// Reference kernels. No intrinsics here; these define the semantics the
// vectorized variants are tested against.
#include "hystk/simd.hpp"

#include <algorithm>
#include <limits>

namespace hystk::simd::scalar {

void gemm(double const* a, double const* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) noexcept
{
    for (std::size_t i = 0; i < m; ++i)
    {
        double* crow = c + i * n;
        std::fill(crow, crow + n, 0.0);
        for (std::size_t l = 0; l < k; ++l)
        {
            double const ail = a[i * k + l];
            double const* brow = b + l * n;
            for (std::size_t j = 0; j < n; ++j)
                crow[j] += ail * brow[j];
        }
    }
}

void axpy(double alpha, double const* x, double* y, std::size_t n) noexcept
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += alpha * x[i];
}

double dot(double const* a, double const* b, std::size_t n) noexcept
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += a[i] * b[i];
    return s;
}

void halfspace_max_slack(double const* normals, double const* offsets,
                         std::size_t planes, std::size_t dim,
                         double const* coords, std::size_t count,
                         double* out) noexcept
{
    std::fill(out, out + count, -std::numeric_limits<double>::infinity());
    for (std::size_t h = 0; h < planes; ++h)
    {
        double const* nrm = normals + h * dim;
        for (std::size_t p = 0; p < count; ++p)
        {
            double s = -offsets[h];
            for (std::size_t d = 0; d < dim; ++d)
                s += nrm[d] * coords[d * count + p];
            out[p] = std::max(out[p], s);
        }
    }
}

}  // namespace hystk::simd::scalar
