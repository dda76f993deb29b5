// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner kernels. Every kernel has a scalar reference
// implementation; vectorized variants are selected once at runtime from the
// CPU feature set. The variants are not bit-identical (FMA contraction), the
// equivalence tests bound the difference.
namespace hystk::simd {

enum class Backend
{
    scalar,
    avx2,
};

std::string_view backend_name(Backend b) noexcept;

//! Best backend supported by both the build and the running CPU.
Backend detect_backend() noexcept;

//! Backend used by the dispatching entry points below.
Backend active_backend() noexcept;

//! Force a backend (tests, benchmarking). Returns false if unavailable.
bool set_backend(Backend b) noexcept;

// c[m x n] = a[m x k] * b[k x n], all row-major and non-aliasing.
void gemm(double const* a, double const* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) noexcept;

// y += alpha * x
void axpy(double alpha, double const* x, double* y, std::size_t n) noexcept;

double dot(double const* a, double const* b, std::size_t n) noexcept;

// out[p] = max_h (normals[h,:] . x_p - offsets[h]) for `count` points stored
// structure-of-arrays: coords[d * count + p] is coordinate d of point p.
// With planes == 0 every output is -infinity.
void halfspace_max_slack(double const* normals, double const* offsets,
                         std::size_t planes, std::size_t dim,
                         double const* coords, std::size_t count,
                         double* out) noexcept;

namespace scalar {
void gemm(double const*, double const*, double*, std::size_t, std::size_t,
          std::size_t) noexcept;
void axpy(double, double const*, double*, std::size_t) noexcept;
double dot(double const*, double const*, std::size_t) noexcept;
void halfspace_max_slack(double const*, double const*, std::size_t,
                         std::size_t, double const*, std::size_t,
                         double*) noexcept;
}  // namespace scalar

#ifdef HYSTK_HAVE_AVX2
namespace avx2 {
void gemm(double const*, double const*, double*, std::size_t, std::size_t,
          std::size_t) noexcept;
void axpy(double, double const*, double*, std::size_t) noexcept;
double dot(double const*, double const*, std::size_t) noexcept;
void halfspace_max_slack(double const*, double const*, std::size_t,
                         std::size_t, double const*, std::size_t,
                         double*) noexcept;
}  // namespace avx2
#endif

}  // namespace hystk::simd
