// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>

#include <doctest.h>

#include "hystk/errors.hpp"
#include "hystk/fundamental.hpp"
#include "oracles.hpp"

using namespace hystk;
using namespace hystk::markov;

namespace {


ImpulsiveSystem constant_system(Matrix a, std::vector<Impulse> imps, double horizon)
{
    std::size_t const n = a.rows();
    return ImpulsiveSystem(n, [a](double) { return a; }, std::move(imps), 0.0, horizon);
}

}  // namespace

TEST_CASE("enumerate_paths")
{
    using P = std::vector<std::vector<std::size_t>>;
    CHECK(enumerate_paths(2, 2) == P{{2}});
    auto const p02 = enumerate_paths(0, 2);
    REQUIRE(p02.size() == 2);
    CHECK(std::find(p02.begin(), p02.end(), std::vector<std::size_t>{0, 2}) != p02.end());
    CHECK(std::find(p02.begin(), p02.end(), std::vector<std::size_t>{0, 1, 2}) != p02.end());
    CHECK(enumerate_paths(0, 4).size() == 8);
    for (auto const& p : enumerate_paths(1, 6))
    {
        CHECK(p.front() == 1);
        CHECK(p.back() == 6);
        CHECK(std::is_sorted(p.begin(), p.end()));
    }
    CHECK_THROWS(enumerate_paths(3, 1));
}

TEST_CASE("system validation")
{
    Matrix const a{{-1, 0}, {1, 0}};
    CHECK_THROWS(constant_system(a, {{0.5, Matrix::identity(2)}, {0.5, Matrix::identity(2)}}, 1));
    CHECK_THROWS(constant_system(a, {{1.5, Matrix::identity(2)}}, 1));
    CHECK_THROWS(constant_system(a, {{0.5, Matrix::identity(3)}}, 1));
    auto const sys = constant_system(a, {}, 1);
    CHECK_THROWS(fundamental_matrix_product(sys, 0.5, 0.5));
    CHECK_THROWS(fundamental_matrix_series(sys, 0.6, 0.5));
}

TEST_CASE("product formula")
{
    Matrix const a{{-0.8, 0.3}, {0.8, -0.3}};
    SUBCASE("no impulses")
    {
        auto const sys = constant_system(a, {}, 2.0);
        auto const phi = fundamental_matrix_product(sys, 0.2, 1.7);
        CHECK(oracle::max_diff(phi, oracle::expm(a, 1.5)) <= 1e-10);
    }
    SUBCASE("one impulse")
    {
        Matrix const b{{0.9, 0.2}, {0.1, 0.8}};
        auto const sys = constant_system(a, {{0.6, b}}, 2.0);
        auto const phi = fundamental_matrix_product(sys, 0.0, 1.5);
        Matrix const want = oracle::expm(a, 0.9) * b * oracle::expm(a, 0.6);
        CHECK(oracle::max_diff(phi, want) <= 1e-8);
        // Excluded at t', included at t.
        auto const at_tp = fundamental_matrix_product(sys, 0.6, 1.5);
        CHECK(oracle::max_diff(at_tp, oracle::expm(a, 0.9)) <= 1e-10);
        auto const at_t = fundamental_matrix_product(sys, 0.0, 0.6);
        CHECK(oracle::max_diff(at_t, b * oracle::expm(a, 0.6)) <= 1e-10);
    }
    SUBCASE("identity impulses change nothing")
    {
        auto const plain = fundamental_matrix_product(constant_system(a, {}, 2.0), 0.0, 2.0);
        auto const id = fundamental_matrix_product(
            constant_system(a, {{0.5, Matrix::identity(2)}, {1.2, Matrix::identity(2)}}, 2.0),
            0.0, 2.0);
        CHECK(oracle::max_diff(plain, id) <= 1e-12);
    }
}

TEST_CASE("series method")
{
    Matrix const a{{-0.8, 0.3}, {0.8, -0.3}};
    SUBCASE("matrix exponential")
    {
        auto const r = fundamental_matrix_series(constant_system(a, {}, 1.0), 0.0, 1.0);
        CHECK(oracle::max_diff(r.phi, oracle::expm(a, 1.0)) <= 1e-10);
        CHECK(r.terms < kMaxSeriesTerms);
        CHECK(r.last_term_norm < 1e-12);
    }
    SUBCASE("one impulse agrees with the product formula")
    {
        Matrix const b{{0.9, 0.2}, {0.1, 0.8}};
        auto const sys = constant_system(a, {{0.4, b}}, 1.0);
        auto const r = fundamental_matrix_series(sys, 0.0, 1.0);
        CHECK(oracle::max_diff(r.phi, fundamental_matrix_product(sys, 0.0, 1.0)) <= 1e-6);
        CHECK(oracle::max_diff(r.phi, oracle::expm(a, 0.6) * b * oracle::expm(a, 0.4)) <= 1e-9);
    }
    SUBCASE("time-dependent generator, several impulses")
    {
        ImpulsiveSystem const sys(
            3,
            [](double t) {
                return Matrix{{-0.5 - 0.2 * std::cos(t), 0.2, 0.1},
                              {0.3, -0.4, 0.3 * std::sin(2 * t)},
                              {0.2 + 0.2 * std::cos(t), 0.2, -0.4}};
            },
            {{0.3, Matrix{{1.1, 0.1, 0}, {0, 0.9, 0.2}, {0.1, 0, 1}}},
             {0.9, Matrix{{0.7, 0.2, 0.1}, {0.2, 0.7, 0.1}, {0.1, 0.1, 0.8}}},
             {1.5, Matrix{{1, 0.5, 0}, {0, 1, 0.5}, {0, 0, 1}}}},
            0.0, 2.0);
        auto const r = fundamental_matrix_series(sys, 0.0, 2.0);
        CHECK(oracle::max_diff(r.phi, fundamental_matrix_product(sys, 0.0, 2.0)) <= 1e-6);
        auto const r2 = fundamental_matrix_series(sys, 0.3, 1.5);
        CHECK(oracle::max_diff(r2.phi, fundamental_matrix_product(sys, 0.3, 1.5)) <= 1e-6);
    }
    SUBCASE("term cap")
    {
        try
        {
            fundamental_matrix_series(constant_system(a, {}, 1.0), 0.0, 1.0, 1e-12, 2);
            FAIL("expected ConvergenceError");
        }
        catch (ConvergenceError const& e)
        {
            CHECK(e.last_term_norm() > 1e-12);
        }
    }
}

TEST_CASE("kolmogorov system matches propagate after transposition")
{
    MarkovField const f(
        3,
        [](double t, Vec const& x) {
            return Vec{1.0 + 0.3 * std::cos(t), 0.5 + 0.5 * x[0] * x[0], 0.9};
        },
        [](double, Vec const&) {
            return Matrix{{0, 0.6, 0.4}, {0.5, 0, 0.5}, {0.3, 0.7, 0}};
        },
        {ImpulseSurface::at_time(0.5,
                                 [](double, Vec const&) {
                                     return Matrix{{0.9, 0.1, 0}, {0, 0.8, 0.2}, {0.1, 0, 0.9}};
                                 }),
         ImpulseSurface::on_facet(
             geometry::BoundaryFacet(geometry::Region(2, {geometry::HalfSpace({-1, 0}, 0)}), 0),
             [](double, Vec const&) {
                 return Matrix{{0.7, 0.2, 0.1}, {0.2, 0.7, 0.1}, {0.1, 0.1, 0.8}};
             })});
    auto const flow = SemiFlow::closed_form(2, [](double s, double t, Vec const& xi) {
        double const c = std::cos(t - s), sn = std::sin(t - s);
        return Vec{c * xi[0] - sn * xi[1], sn * xi[0] + c * xi[1]};
    });
    Vec const xi{0.5, 0.5};
    auto const sys = kolmogorov_system(f, flow, 0.0, 2.0, xi);
    REQUIRE(sys.impulses().size() == 2);
    auto const pi = propagate(f, flow, 0.0, 2.0, xi).entries;
    auto const psi = fundamental_matrix_product(sys, 0.0, 2.0);
    CHECK(oracle::max_diff(pi, psi.transposed()) <= 1e-7);
    auto const ser = fundamental_matrix_series(sys, 0.0, 2.0);
    CHECK(oracle::max_diff(ser.phi, psi) <= 1e-6);
}
