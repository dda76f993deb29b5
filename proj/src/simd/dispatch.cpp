// SPDX-License-Identifier: Apache-2.0
// Runtime selection between kernel variants. No intrinsics in this file.
#include <atomic>
#include <cstdlib>
#include <cstring>

#include "hystk/simd.hpp"

namespace hystk::simd {

namespace {

bool cpu_has_avx2() noexcept
{
#if defined(HYSTK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend() noexcept
{
    // HYSTK_SIMD=scalar pins the reference path, e.g. for reproducing a
    // result on a machine without AVX2.
    if (char const* env = std::getenv("HYSTK_SIMD"))
    {
        if (std::strcmp(env, "scalar") == 0)
            return Backend::scalar;
    }
    return detect_backend();
}

std::atomic<Backend>& current()
{
    static std::atomic<Backend> b{initial_backend()};
    return b;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept
{
    switch (b)
    {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
    }
    return "unknown";
}

Backend detect_backend() noexcept
{
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() noexcept { return current().load(); }

bool set_backend(Backend b) noexcept
{
    if (b == Backend::avx2 && !cpu_has_avx2())
        return false;
    current().store(b);
    return true;
}

void gemm(double const* a, double const* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) noexcept
{
#ifdef HYSTK_HAVE_AVX2
    if (active_backend() == Backend::avx2 && n >= 4)
        return avx2::gemm(a, b, c, m, k, n);
#endif
    scalar::gemm(a, b, c, m, k, n);
}

void axpy(double alpha, double const* x, double* y, std::size_t n) noexcept
{
#ifdef HYSTK_HAVE_AVX2
    if (active_backend() == Backend::avx2)
        return avx2::axpy(alpha, x, y, n);
#endif
    scalar::axpy(alpha, x, y, n);
}

double dot(double const* a, double const* b, std::size_t n) noexcept
{
#ifdef HYSTK_HAVE_AVX2
    if (active_backend() == Backend::avx2)
        return avx2::dot(a, b, n);
#endif
    return scalar::dot(a, b, n);
}

void halfspace_max_slack(double const* normals, double const* offsets,
                         std::size_t planes, std::size_t dim,
                         double const* coords, std::size_t count,
                         double* out) noexcept
{
#ifdef HYSTK_HAVE_AVX2
    if (active_backend() == Backend::avx2)
        return avx2::halfspace_max_slack(normals, offsets, planes, dim, coords,
                                         count, out);
#endif
    scalar::halfspace_max_slack(normals, offsets, planes, dim, coords, count,
                                out);
}

}  // namespace hystk::simd
