#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fkt/errors.hpp"
#include "fkt/thermo.hpp"

using namespace fkt;
using std::numbers::pi;

namespace {

const HarmonicSpec kCos{0.0, {{1, 1.0, 0.0}}};
const HarmonicSpec kCosSin{0.0, {{1, 1.0, 0.0}, {2, 0.0, 0.5}}};

HarmonicSpec random_harmonic(std::mt19937_64& rng, int kmax = 4) {
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    HarmonicSpec s{c(rng), {}};
    for (int k = 1; k <= kmax; ++k) s.harmonics.push_back({k, c(rng), c(rng)});
    return s;
}

double max_abs(const GridFunction& f) {
    return std::max(std::abs(f.min()), std::abs(f.max()));
}

}  // namespace

TEST_CASE("admissible drift construction") {
    const auto grid = make_grid(128);
    const auto flat = admissible_from_spec(HarmonicSpec{}, grid);
    CHECK(flat.gamma_tilde == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(max_abs(flat.mu_tilde + (-1.0)) <= 1e-15);

    std::mt19937_64 rng(4);
    const auto spec = random_harmonic(rng);
    const auto ad = admissible_from_spec(spec, grid);
    CHECK(ad.mu_tilde.min() > 0.0);
    CHECK(std::abs(integrate(ad.mu_tilde) - 1.0) <= 1e-10);
    CHECK(max_abs(ad.g1 - derivative(ad.g, 1)) <= 1e-8);
    CHECK(max_abs(ad.g2 - derivative(ad.g, 2)) <= 1e-8);

    const auto moved = admissible_from_samples(ad.g + 7.5);
    CHECK(max_abs(moved.mu_tilde - ad.mu_tilde) <= 1e-13);

    const auto e = solve_principal(sample(kCos, grid));
    CHECK(max_abs(admissible_from_samples(e.log_F).mu_tilde - gibbs_density(e)) <= 1e-8);

    CHECK_THROWS_AS(admissible_from_spec(HarmonicSpec{0.0, {{1, 200.0, 0.0}}}, grid), DomainError);
}

TEST_CASE("carre du champ") {
    const auto grid = make_grid(64);
    const auto c = sample(kCos, grid);
    const auto s = sample(HarmonicSpec{0.0, {{1, 0.0, 1.0}}}, grid);
    CHECK(max_abs(carre_du_champ(c, GridFunction(grid, 3.0))) == 0.0);
    CHECK(max_abs(carre_du_champ(c, s) - carre_du_champ(s, c)) == 0.0);
    const auto want = (-4 * pi * pi) * (s * c);
    CHECK(max_abs(carre_du_champ(c, s) - want) <= 1e-10);
}

TEST_CASE("relative entropy") {
    const auto grid = make_grid(256);
    CHECK(relative_entropy(admissible_from_spec(HarmonicSpec{}, grid)) == 0.0);

    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        const auto ad = admissible_from_spec(random_harmonic(rng), grid);
        const double h = relative_entropy(ad);
        CHECK(h <= 1e-10);
        const double shifted = relative_entropy(admissible_from_samples(ad.g + 3.0));
        CHECK(std::abs(shifted - h) <= 1e-12 * std::max(1.0, std::abs(h)));
    }

    // Direct quadrature of -1/2 int ((log F)')^2 F^2 with the eigen drift.
    const auto e = solve_principal(sample(kCos, grid));
    const double direct = -0.5 * integrate(e.drift * e.drift * e.F * e.F) / e.gamma;
    CHECK(std::abs(relative_entropy(admissible_from_samples(e.log_F)) - direct) <= 1e-9);
}

TEST_CASE("pressure, gap and their decomposition") {
    std::mt19937_64 rng(21);
    for (const auto& vspec : {HarmonicSpec{}, kCos, kCosSin}) {
        const auto grid = make_grid(256);
        const auto V = sample(vspec, grid);
        const auto e = solve_principal(V);

        const auto flat = admissible_from_spec(HarmonicSpec{}, grid);
        CHECK(std::abs(pressure_value(flat, V) - integrate(V)) <= 1e-12);

        const auto opt = admissible_from_samples(e.log_F);
        CHECK(std::abs(pressure_value(opt, V) - e.lambda) <= 1e-7);
        CHECK(std::abs(pressure_gap(opt, e, V)) <= 1e-10);

        for (int i = 0; i < 10; ++i) {
            const auto ad = admissible_from_spec(random_harmonic(rng), grid);
            const double p = pressure_value(ad, V);
            const double gap = pressure_gap(ad, e, V);
            CHECK(p <= e.lambda + 1e-8);
            CHECK(gap >= 0.0);
            CHECK(std::abs(e.lambda - p - gap) <= 1e-8);
            const auto r = entropy_report(ad, e, V);
            CHECK(r.H <= 1e-10);
            CHECK(r.gap >= -1e-8);
            CHECK(std::abs(r.pressure_value + r.gap - r.lambda_ref) <= 1e-9);
        }
    }

    // g = 0: gap is 1/2 int ((log F)')^2 and equals lambda - int V.
    const auto grid = make_grid(256);
    const auto V = sample(kCos, grid);
    const auto e = solve_principal(V);
    const double gap0 = pressure_gap_quadrature(admissible_from_spec(HarmonicSpec{}, grid), e);
    CHECK(std::abs(gap0 - 0.5 * integrate(e.drift * e.drift)) <= 1e-12);
    CHECK(std::abs(gap0 - (e.lambda - integrate(V))) <= 1e-8);
}

TEST_CASE("finite-horizon entropy estimator") {
    const auto grid = make_grid(128);
    const auto flat = admissible_from_spec(HarmonicSpec{}, grid);
    const auto zero = entropy_finite_T_mc(flat, 1.0, {100, 1e-2, 3});
    CHECK(zero.mean == 0.0);
    CHECK(zero.std_error == 0.0);
    CHECK_THROWS_AS(entropy_finite_T_mc(flat, 0.5, {100, 1e-2, 3}), DomainError);

    const auto e = solve_principal(sample(kCos, grid));
    const auto ad = admissible_from_samples(e.log_F);
    const double h = relative_entropy(ad);
    const auto est = entropy_finite_T_mc(ad, 2.0, {2000, 1e-3, 9});
    CHECK(std::abs(est.mean - h) <= 3 * est.std_error + 1e-2);
    const auto point = entropy_finite_T_mc(ad, 2.0, {2000, 1e-3, 9}, EntropyStart::kPoint, 0.5);
    CHECK(std::abs(point.mean - h) <= 3 * point.std_error + 1e-2);
}

TEST_CASE("pressure maximization") {
    const auto grid = make_grid(64);
    const auto free = maximize_pressure(GridFunction(grid, 0.0), 2, 1e-2, 50);
    CHECK(std::abs(free.value) <= 1e-8);

    const auto V = sample(kCos, grid);
    const auto res = maximize_pressure(V, 2, 1e-2, 300);
    for (std::size_t i = 1; i < res.trace.size(); ++i) CHECK(res.trace[i].value >= res.trace[i - 1].value);
    CHECK(res.value <= solve_principal(V).lambda + 1e-8);
    CHECK(res.value > integrate(V));

    CHECK_THROWS_AS(maximize_pressure(V, 0, 1e-2, 10), DomainError);
    CHECK_THROWS_AS(maximize_pressure(V, 17, 1e-2, 10), DomainError);
    CHECK_THROWS_AS(maximize_pressure(V, 2, -1.0, 10), DomainError);
}
