#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fkt/errors.hpp"
#include "fkt/feynman_kac.hpp"

using namespace fkt;
using std::numbers::pi;

namespace {

double max_rel_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    return m;
}

}  // namespace

TEST_CASE("free propagation preserves constants") {
    const auto grid = make_grid(64);
    const GridFunction zero(grid, 0.0);
    const GridFunction f(grid, 1.7);
    const auto u = propagate_pde(zero, f, {0.5, 1e-3});
    CHECK(max_rel_diff(u, f) < 1e-11);

    const auto mc = propagate_mc(zero, f, 0.4, {50, 1e-2, 1}, 0.5);
    CHECK(mc.mean == doctest::Approx(1.7).epsilon(1e-15));
    CHECK(mc.std_error == 0.0);
}

TEST_CASE("constant potential multiplies by exp(ct)") {
    const auto grid = make_grid(64);
    const auto f = sample(HarmonicSpec{1.0, {{2, 0.1, 0.0}}}, grid);
    const auto u = propagate_pde(GridFunction(grid, 1.0), f, {0.5, 1e-3});
    const auto heat = propagate_pde(GridFunction(grid, 0.0), f, {0.5, 1e-3});
    CHECK(max_rel_diff(u, std::exp(0.5) * heat) < 1e-6);

    // Path integral of a constant is exact, so each weight is exactly exp(ct) f(X_t).
    const auto mc = propagate_mc(GridFunction(grid, 1.0), GridFunction(grid, 2.0), 0.0, {10, 1e-2, 1}, 0.5);
    CHECK(mc.mean == doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-13));
}

TEST_CASE("heat flow damps harmonics at the exact rate") {
    const auto grid = make_grid(64);
    for (int k : {1, 3}) {
        const auto f = sample(HarmonicSpec{0.0, {{k, 1.0, 0.0}}}, grid);
        const auto u = propagate_pde(GridFunction(grid, 0.0), f, {0.05, 1e-4});
        const double mu = -2 * pi * pi * k * k;
        // Fourier differentiation is exact on harmonics, so the discrete
        // solution is the Crank-Nicolson amplification factor to the 500th power.
        const double z = mu * 1e-4;
        const double discrete = std::pow((1 + z / 2) / (1 - z / 2), 500);
        CHECK(max_rel_diff(u, discrete * f) < 1e-12);
        CHECK(max_rel_diff(u, std::exp(mu * 0.05) * f) < 1e-6);
    }
}

TEST_CASE("eigenfunction grows at the principal eigenvalue") {
    const auto grid = make_grid(128);
    const auto V = sample(HarmonicSpec{0.0, {{1, 1.0, 0.0}, {2, 0.0, 0.4}}}, grid);
    const auto e = solve_principal(V);
    const auto u = propagate_pde(V, e.F, {0.5, 1e-3});
    CHECK(max_rel_diff(u, std::exp(e.lambda * 0.5) * e.F) < 1e-6);
}

TEST_CASE("propagator is self-adjoint") {
    const auto grid = make_grid(128);
    const auto V = sample(HarmonicSpec{0.0, {{1, 1.0, 0.0}}}, grid);
    const auto f = sample(HarmonicSpec{1.0, {{1, 0.0, 0.3}, {4, 0.2, 0.0}}}, grid);
    const auto g = sample(HarmonicSpec{-0.5, {{2, 0.7, 0.1}}}, grid);
    CHECK(check_selfadjoint(V, f, g, 0.5, 1e-3) <= 1e-10);
    CHECK(check_selfadjoint(V, f, f, 0.5, 1e-3) == 0.0);
    CHECK(check_selfadjoint(V, f, g, 0.5, 1e-3, Laplacian::kSecondOrder) <= 1e-10);
}

TEST_CASE("Monte-Carlo agrees with Crank-Nicolson") {
    const auto grid = make_grid(256);
    const auto V = sample(HarmonicSpec{0.0, {{1, 1.0, 0.0}}}, grid);
    const auto f = sample(HarmonicSpec{1.0, {{1, 0.0, 0.5}}}, grid);
    const double x = grid.node(77);
    const double pde = propagate_pde(V, f, {0.5, 1e-3})[77];
    const auto mc = propagate_mc(V, f, x, {20000, 1e-3, 11}, 0.5);
    // Statistical error plus the O(dt) bias of the left-endpoint path integral.
    CHECK(std::abs(mc.mean - pde) <= 4 * mc.std_error + 1e-3);
}

TEST_CASE("propagator input errors") {
    const auto grid = make_grid(32);
    CHECK_THROWS_AS(CrankNicolson(GridFunction(grid, 1000.0), 0.01), DomainError);
    CHECK_THROWS_AS(CrankNicolson(GridFunction(grid, 0.0), -1.0), DomainError);
    const CrankNicolson cn(GridFunction(grid, 0.0), 1e-3);
    CHECK_THROWS_AS(cn.propagate(GridFunction(make_grid(16), 1.0), 1), SizingError);
    CHECK_THROWS_AS(propagate_pde(GridFunction(grid, 0.0), GridFunction(grid, 1.0), {0.5, 0.3}), DomainError);
}
