#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "fkt/cli/commands.hpp"
#include "fkt/cli/output.hpp"
#include "fkt/gibbs.hpp"
#include "fkt/thermo.hpp"

namespace fkt::cli {

namespace {

struct Check {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

HarmonicSpec random_spec(std::mt19937_64& rng, int max_k) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    HarmonicSpec s;
    for (int k = 1; k <= max_k; ++k) {
        const double a = coeff(rng);
        const double b = coeff(rng);
        s.harmonics.push_back({k, a, b});
    }
    return s;
}

class Battery {
public:
    void at_most(const std::string& name, const std::function<double()>& value, double tol) {
        run(name, tol, [&] {
            const double v = value();
            return std::pair{v, v <= tol};
        });
    }

    void within(const std::string& name, const std::function<std::pair<double, double>()>& pair) {
        try {
            const auto [value, tol] = pair();
            checks_.push_back({name, value, tol, value <= tol});
        } catch (const std::exception&) {
            checks_.push_back({name, std::numeric_limits<double>::quiet_NaN(), 0.0, false});
        }
    }

    const std::vector<Check>& checks() const { return checks_; }

private:
    void run(const std::string& name, double tol,
             const std::function<std::pair<double, bool>()>& body) {
        try {
            const auto [v, ok] = body();
            checks_.push_back({name, v, tol, ok && std::isfinite(v)});
        } catch (const std::exception&) {
            checks_.push_back({name, std::numeric_limits<double>::quiet_NaN(), tol, false});
        }
    }

    std::vector<Check> checks_;
};

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

int run_verify(const RunConfig& cfg, const VerifyOptions& options) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    write_meta(dir, "verify", cfg);

    const PeriodicGrid grid(cfg.n);
    const GridFunction V = resolve(cfg.potential, grid, GridFunction(grid, 0.0));
    const Laplacian scheme = cfg.laplacian;
    EigenSolution e = solve_principal(V, scheme);
    e.lambda += options.perturb_eigenvalue;
    const auto mu = gibbs_density(e);
    std::mt19937_64 rng(cfg.seed);
    const double dt = cfg.dt;

    Battery b;
    b.at_most("eigen_residual", [&] { return e.residual; }, 1e-9);
    b.at_most("eigen_positivity", [&] { return -e.F.min(); }, 0.0);
    b.at_most("gibbs_normalization", [&] { return std::abs(integrate(mu) - 1.0); }, 1e-10);
    b.at_most("rayleigh_quotient", [&] {
        const auto op = build_generator(V, scheme);
        const Eigen::Map<const Eigen::VectorXd> f(e.F.values().data(),
                                                  static_cast<Eigen::Index>(e.F.size()));
        return std::abs(f.dot(op.a * f) / f.squaredNorm() - e.lambda);
    }, 1e-10);
    b.at_most("mean_value_lower_bound", [&] { return integrate(V) - e.lambda; }, 1e-9);
    b.at_most("shift_covariance_lambda", [&] {
        double worst = 0.0;
        for (double c : {-1.0, 0.5, 3.0}) {
            const auto shifted = solve_principal(V + c, scheme);
            worst = std::max(worst, std::abs(shifted.lambda - (e.lambda - options.perturb_eigenvalue) - c));
        }
        return worst;
    }, 1e-9);
    b.at_most("shift_covariance_eigenfunction", [&] {
        double worst = 0.0;
        for (double c : {-1.0, 0.5, 3.0}) {
            worst = std::max(worst, max_abs_diff(solve_principal(V + c, scheme).F, e.F));
        }
        return worst;
    }, 1e-9);
    b.at_most("selfadjoint_residual", [&] {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const auto f = sample(random_spec(rng, 4), grid);
            const auto g = sample(random_spec(rng, 4), grid);
            worst = std::max(worst, check_selfadjoint(V, f, g, 0.1, dt, scheme));
        }
        return worst;
    }, 1e-9);
    b.at_most("normalized_semigroup_unit", [&] {
        double worst = 0.0;
        const GridFunction one(grid, 1.0);
        for (double t : {0.1, 0.5, 1.0}) {
            worst = std::max(worst, max_abs_diff(normalized_semigroup(e, V, one, t, dt, scheme), one));
        }
        return worst;
    }, 1e-8);
    b.at_most("gibbs_stationarity", [&] {
        const auto f = sample(random_spec(rng, 4), grid);
        const auto pf = normalized_semigroup(e, V, f, 0.5, dt, scheme);
        return std::abs(integrate(pf * mu) - integrate(f * mu));
    }, 1e-7);
    b.at_most("invariance_residual", [&] {
        return invariance_residual(e, sample(HarmonicSpec{0.0, {{2, 0.0, 1.0}}}, grid));
    }, 1e-7);

    std::vector<HarmonicSpec> gs;
    for (int i = 0; i < 20; ++i) gs.push_back(random_spec(rng, 4));
    b.at_most("entropy_sign", [&] {
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& g : gs) worst = std::max(worst, relative_entropy(admissible_from_spec(g, grid)));
        return worst;
    }, 1e-10);
    b.at_most("entropy_forms", [&] {
        double worst = 0.0;
        for (const auto& g : gs) {
            const auto ad = admissible_from_spec(g, grid);
            const double direct = 0.5 * integrate((ad.g2 + ad.g1 * ad.g1) * ad.mu_tilde);
            const double by_parts = -0.5 * integrate(ad.g1 * ad.g1 * ad.mu_tilde);
            worst = std::max(worst, std::abs(direct - by_parts));
        }
        return worst;
    }, 1e-9);
    b.at_most("pressure_at_equilibrium", [&] {
        return std::abs(pressure_value(admissible_from_samples(e.log_F), V) - e.lambda);
    }, 1e-7);
    b.at_most("pressure_decomposition", [&] {
        double worst = 0.0;
        for (const auto& g : gs) {
            const auto ad = admissible_from_spec(g, grid);
            const double gap = pressure_gap_quadrature(ad, e);
            worst = std::max(worst, std::abs(e.lambda - pressure_value(ad, V) - gap));
        }
        return worst;
    }, 1e-8);

    const McConfig mc{cfg.paths, dt, cfg.seed};
    const double t = cfg.t;
    const double x0 = cfg.x;
    const auto g_int = admissible_integrand(derivative(e.log_F, 1), derivative(e.log_F, 2));
    std::optional<PathEnsemble> base;
    try {
        base = simulate_sde(GridFunction(grid, 0.0), FixedPoint{x0}, t, mc, {V, g_int});
    } catch (const std::exception&) {
    }
    b.within("rn_martingale", [&]() -> std::pair<double, double> {
        std::vector<double> w(base.value().n_paths);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = rn_weight(base.value().row(i), e, t).value;
        const auto est = mean_and_error(w);
        return {std::abs(est.mean - 1.0), 3.0 * est.std_error + 5e-3};
    });
    b.at_most("rn_pathwise_identity", [&] {
        double worst = 0.0;
        for (std::size_t i = 0; i < base.value().n_paths; ++i) {
            const auto row = base.value().row(i);
            const double a = rn_weight(row, e, t, 0).value;
            const double c = rn_weight_admissible(row, e.log_F, 1).value;
            worst = std::max(worst, std::abs(a - c) / std::abs(c));
        }
        return worst;
    }, 1e-9);
    b.within("feynman_kac_mc_vs_pde", [&]() -> std::pair<double, double> {
        const auto f = sample(HarmonicSpec{1.0, {{1, 0.0, 0.5}}}, grid);
        const auto u = propagate_pde(V, f, PropagatorConfig{t, dt}, scheme);
        const auto est = propagate_mc(V, f, x0, mc, t);
        return {std::abs(est.mean - interpolate(u, x0)), 3.0 * est.std_error + 5e-3};
    });

    bool all_pass = true;
    Json records = Json::array();
    for (const auto& c : b.checks()) {
        all_pass = all_pass && c.pass;
        Json r;
        r["name"] = c.name;
        r["value"] = number(c.value);
        r["tolerance"] = number(c.tolerance);
        r["pass"] = c.pass;
        records.push_back(r);
    }
    Json doc;
    doc["lambda"] = number(e.lambda);
    doc["n"] = grid.size();
    doc["pass"] = all_pass;
    doc["checks"] = records;
    write_json(dir / "verify.json", doc);
    return all_pass ? kOk : kCheckFailed;
}

}  // namespace fkt::cli
