#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "fkt/errors.hpp"
#include "fkt/grid.hpp"

using namespace fkt;
using std::numbers::pi;

namespace {

HarmonicSpec random_spec(std::mt19937_64& rng, int max_k) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    HarmonicSpec s{u(rng), {}};
    for (int k = 1; k <= max_k; ++k) s.harmonics.push_back({k, u(rng), u(rng)});
    return s;
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("make_grid builds uniform nodes") {
    const auto g = make_grid(8);
    CHECK(g.size() == 8);
    CHECK(g.spacing() == 0.125);
    const auto x = g.nodes();
    for (std::size_t i = 0; i < 8; ++i) CHECK(x[i] == 0.125 * static_cast<double>(i));

    const auto big = make_grid(512);
    CHECK(big.size() == 512);
    CHECK(big.spacing() == 1.0 / 512.0);
    CHECK(big.node(0) == 0.0);
}

TEST_CASE("make_grid rejects odd or tiny sizes") {
    CHECK_THROWS_AS(make_grid(3), SizingError);
    CHECK_THROWS_AS(make_grid(2), SizingError);
    CHECK_THROWS_AS(make_grid(255), SizingError);
    CHECK_NOTHROW(make_grid(4));
}

TEST_CASE("grid functions reject wrong length and non-finite values") {
    const auto g = make_grid(8);
    CHECK_THROWS_AS(GridFunction(g, std::vector<double>(7, 0.0)), SizingError);
    std::vector<double> v(8, 0.0);
    v[3] = std::nan("");
    CHECK_THROWS_AS(GridFunction(g, v), DomainError);
}

TEST_CASE("sample evaluates the trigonometric sum") {
    const auto g = make_grid(8);
    const auto c = sample(HarmonicSpec{2.0, {}}, g);
    for (double v : c.values()) CHECK(v == 2.0);

    const auto cs = sample(HarmonicSpec{0.0, {{1, 1.0, 0.0}}}, g);
    for (std::size_t i = 0; i < 8; ++i) CHECK(cs[i] == doctest::Approx(std::cos(2 * pi * g.node(i))).epsilon(1e-15));
}

TEST_CASE("sample is linear in the harmonic coefficients") {
    std::mt19937_64 rng(7);
    const auto g = make_grid(64);
    const auto a = random_spec(rng, 5);
    const auto b = random_spec(rng, 7);
    const auto lhs = sample(a, g) + sample(b, g);
    const auto rhs = sample(a.merged(b), g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-14);
}

TEST_CASE("sample rejects aliasing and malformed wavenumbers") {
    const auto g = make_grid(8);
    CHECK_THROWS_AS(sample(HarmonicSpec{0.0, {{4, 1.0, 0.0}}}, g), AliasingError);
    CHECK_NOTHROW(sample(HarmonicSpec{0.0, {{3, 1.0, 0.0}}}, g));
    CHECK_THROWS_AS(sample(HarmonicSpec{0.0, {{0, 1.0, 0.0}}}, g), DomainError);
    CHECK_THROWS_AS(sample(HarmonicSpec{0.0, {{1, 1.0, 0.0}, {1, 0.0, 1.0}}}, g), DomainError);
}

TEST_CASE("derivative of constants vanishes") {
    const auto g = make_grid(32);
    CHECK(max_abs(derivative(GridFunction(g, 3.5), 1)) == 0.0);
    CHECK(max_abs(derivative(GridFunction(g, 3.5), 2)) == 0.0);
}

TEST_CASE("derivative of cos(2 pi x) matches the closed form") {
    for (std::size_t n : {16u, 128u, 512u}) {
        const auto g = make_grid(n);
        const auto f = sample(HarmonicSpec{0.0, {{1, 1.0, 0.0}}}, g);
        const auto d1 = derivative(f, 1);
        const auto d2 = derivative(f, 2);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = g.node(i);
            CHECK(std::abs(d1[i] + 2 * pi * std::sin(2 * pi * x)) < 1e-11);
            CHECK(std::abs(d2[i] + 4 * pi * pi * std::cos(2 * pi * x)) < 1e-9);
        }
    }
}

TEST_CASE("derivative rejects other orders") {
    const auto g = make_grid(8);
    CHECK_THROWS_AS(derivative(GridFunction(g, 1.0), 3), DomainError);
}

TEST_CASE("integrate examples") {
    const auto g = make_grid(64);
    CHECK(integrate(GridFunction(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    const auto c = sample(HarmonicSpec{0.0, {{1, 1.0, 0.0}}}, g);
    CHECK(std::abs(integrate(c)) < 1e-15);
    // closed form of cos^2 over one period: 1/2
    CHECK(std::abs(integrate(c * c) - 0.5) < 1e-14);
}

TEST_CASE("calculus properties on random harmonic inputs") {
    std::mt19937_64 rng(11);
    const auto g = make_grid(128);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = sample(random_spec(rng, 10), g);
        const auto h = sample(random_spec(rng, 10), g);
        const double alpha = 0.7, beta = -1.3;

        // linearity
        const auto lhs = derivative(alpha * f + beta * h, 1);
        const auto rhs = alpha * derivative(f, 1) + beta * derivative(h, 1);
        CHECK(max_abs(lhs - rhs) < 1e-11);

        // integration by parts and periodicity
        const double ibp = integrate(derivative(f, 1) * h) + integrate(f * derivative(h, 1));
        CHECK(std::abs(ibp) < 1e-10);
        CHECK(std::abs(integrate(derivative(f, 1))) < 1e-12);
    }
}

TEST_CASE("refinement consistency for harmonic inputs") {
    std::mt19937_64 rng(5);
    const auto spec = random_spec(rng, 6);
    const auto coarse = make_grid(64);
    const auto fine = make_grid(128);
    const auto dc = derivative(sample(spec, coarse), 1);
    const auto df = derivative(sample(spec, fine), 1);
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(dc[i] - df[2 * i]) < 1e-10);
    CHECK(std::abs(integrate(sample(spec, coarse)) - integrate(sample(spec, fine))) < 1e-10);
}

TEST_CASE("periodic interpolation and wrapping") {
    const auto g = make_grid(4);
    const GridFunction f(g, std::vector<double>{0.0, 1.0, 2.0, 3.0});
    CHECK(interpolate(f, 0.125) == doctest::Approx(0.5));
    CHECK(interpolate(f, 0.875) == doctest::Approx(1.5));  // between 3 and wrap-around 0
    CHECK(interpolate(f, 1.25) == doctest::Approx(1.0));
    CHECK(interpolate(f, -0.75) == doctest::Approx(1.0));
    CHECK(wrap_unit(1.0) == 0.0);
    CHECK(wrap_unit(-1e-300) < 1.0);
    CHECK(wrap_unit(-0.25) == 0.75);
}

TEST_CASE("rotation shifts node values") {
    const auto g = make_grid(4);
    const GridFunction f(g, std::vector<double>{0.0, 1.0, 2.0, 3.0});
    const auto r = f.rotated(1);
    CHECK(r[0] == 1.0);
    CHECK(r[3] == 0.0);
}

TEST_CASE("csv loading requires exact grid nodes") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto good = dir / "fkt_grid_good.csv";
    const auto bad = dir / "fkt_grid_bad.csv";
    {
        std::ofstream out(good);
        out << "x,value\n0,1\n0.25,2\n0.5,3\n0.75,4\n";
        std::ofstream out2(bad);
        out2 << "x,value\n0,1\n0.3,2\n0.5,3\n0.75,4\n";
    }
    const auto g = make_grid(4);
    const auto f = load_csv(good, g);
    CHECK(f[3] == 4.0);
    CHECK_THROWS_AS(load_csv(bad, g), DomainError);
    const auto short_file = dir / "fkt_grid_short.csv";
    {
        std::ofstream out(short_file);
        out << "x,value\n0,1\n0.25,2\n";
    }
    CHECK_THROWS_AS(load_csv(short_file, g), SizingError);
}
