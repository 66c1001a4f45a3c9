#include "fkt/cli/commands.hpp"

#include <cmath>
#include <filesystem>

#include "fkt/cli/output.hpp"
#include "fkt/gibbs.hpp"
#include "fkt/thermo.hpp"

namespace fkt::cli {

namespace {

namespace fs = std::filesystem;

struct Setup {
    PeriodicGrid grid;
    GridFunction potential;
};

Setup setup(const RunConfig& cfg) {
    const PeriodicGrid grid(cfg.n);
    return Setup{grid, resolve(cfg.potential, grid, GridFunction(grid, 0.0))};
}

fs::path prepare(const RunConfig& cfg, const std::string& command) {
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    write_meta(dir, command, cfg);
    return dir;
}

Json report_json(const EntropyReport& r) {
    Json j;
    j["H"] = number(r.H);
    j["mean_V"] = number(r.mean_V);
    j["pressure_value"] = number(r.pressure_value);
    j["gap"] = number(r.gap);
    j["lambda_ref"] = number(r.lambda_ref);
    return j;
}

}  // namespace

int run_eigen(const RunConfig& cfg) {
    const auto dir = prepare(cfg, "eigen");
    const auto [grid, V] = setup(cfg);
    const auto e = solve_principal(V, cfg.laplacian);
    const auto mu = gibbs_density(e);

    CsvWriter csv(dir / "eigen.csv", {"x", "V", "F", "density_muV", "drift"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row(std::vector<double>{grid.node(i), V[i], e.F[i], mu[i], e.drift[i]});
    }
    csv.save();

    Json j;
    j["lambda"] = number(e.lambda);
    j["gamma"] = number(e.gamma);
    j["spectral_gap"] = number(e.spectral_gap);
    j["n"] = grid.size();
    j["critical_points_F"] = critical_point_count(e.F);
    write_json(dir / "eigen.json", j);
    return kOk;
}

int run_propagate(const RunConfig& cfg) {
    const auto dir = prepare(cfg, "propagate");
    const auto [grid, V] = setup(cfg);
    const auto f = resolve(cfg.f, grid, GridFunction(grid, 1.0));

    Json j;
    j["method"] = cfg.method;
    j["t"] = number(cfg.t);
    j["x"] = number(cfg.x);
    if (cfg.method == "pde") {
        const auto u = propagate_pde(V, f, PropagatorConfig{cfg.t, cfg.dt}, cfg.laplacian);
        CsvWriter csv(dir / "propagate.csv", {"x", "u"});
        for (std::size_t i = 0; i < grid.size(); ++i) csv.row(std::vector<double>{grid.node(i), u[i]});
        csv.save();
        j["value"] = number(interpolate(u, cfg.x));
    } else {
        const auto est = propagate_mc(V, f, cfg.x, McConfig{cfg.paths, cfg.dt, cfg.seed}, cfg.t);
        j["value"] = number(est.mean);
        j["std_error"] = number(est.std_error);
        j["paths"] = cfg.paths;
        j["seed"] = cfg.seed;
    }
    j["n"] = grid.size();
    j["dt"] = number(cfg.dt);
    write_json(dir / "propagate.json", j);
    return kOk;
}

int run_simulate(const RunConfig& cfg) {
    const auto dir = prepare(cfg, "simulate");
    const auto [grid, V] = setup(cfg);

    GridFunction drift(grid, 0.0);
    GridFunction target(grid, 1.0);
    if (cfg.drift == "doob") {
        const auto e = solve_principal(V, cfg.laplacian);
        drift = e.drift;
        target = gibbs_density(e);
    } else {
        const auto ad = admissible_from_samples(resolve(cfg.g, grid, GridFunction(grid, 0.0)));
        drift = ad.g1;
        target = ad.mu_tilde;
    }

    InitialLaw initial = FixedPoint{0.0};
    if (cfg.init.rfind("point:", 0) == 0) {
        initial = FixedPoint{std::stod(cfg.init.substr(6))};
    } else if (cfg.init == "density:muV") {
        initial = PiecewiseLinearLaw(target);
    } else {
        initial = PiecewiseLinearLaw(load_csv(cfg.init.substr(8), grid));
    }

    const McConfig mc{cfg.paths, cfg.dt, cfg.seed};
    const auto paths = simulate_sde(drift, initial, cfg.T, mc, {}, cfg.record_paths);

    const auto empirical = histogram(paths.end, cfg.bins);
    const auto expected = PiecewiseLinearLaw(target).bin_masses(cfg.bins);
    const double width = 1.0 / static_cast<double>(cfg.bins);
    CsvWriter hist(dir / "histogram.csv", {"bin_left", "count", "empirical_density", "target_density"});
    for (std::size_t b = 0; b < cfg.bins; ++b) {
        const double count = std::round(empirical[b] * static_cast<double>(paths.n_paths));
        hist.row(std::vector<double>{static_cast<double>(b) * width, count, empirical[b] / width,
                                     expected[b] / width});
    }
    hist.save();

    if (cfg.record_paths) {
        CsvWriter csv(dir / "paths.csv", {"path_id", "step", "x"});
        for (std::size_t p = 0; p < paths.n_paths; ++p) {
            const auto pos = paths.path_positions(p);
            for (std::size_t r = 0; r < pos.size(); ++r) {
                csv.row(std::vector<std::string>{std::to_string(p),
                                                 std::to_string(r * cfg.record_paths),
                                                 format_number(pos[r])});
            }
        }
        csv.save();
    }

    Json j;
    j["tv_distance"] = number(total_variation(empirical, expected));
    j["n_paths"] = paths.n_paths;
    j["T"] = number(cfg.T);
    j["dt"] = number(cfg.dt);
    write_json(dir / "simulate.json", j);
    return kOk;
}

int run_entropy(const RunConfig& cfg) {
    const auto dir = prepare(cfg, "entropy");
    const auto [grid, V] = setup(cfg);
    const auto e = solve_principal(V, cfg.laplacian);
    const auto ad = admissible_from_samples(resolve(cfg.g, grid, e.log_F));
    write_json(dir / "entropy.json", report_json(entropy_report(ad, e, V)));
    return kOk;
}

int run_maximize(const RunConfig& cfg) {
    const auto dir = prepare(cfg, "maximize");
    const auto [grid, V] = setup(cfg);
    const auto e = solve_principal(V, cfg.laplacian);
    const auto result = maximize_pressure(V, cfg.K, cfg.lr, cfg.iters);

    CsvWriter trace(dir / "trace.csv", {"iter", "value", "grad_norm"});
    for (const auto& t : result.trace) {
        trace.row(std::vector<double>{static_cast<double>(t.iter), t.value, t.grad_norm});
    }
    trace.save();

    const auto ad = admissible_from_spec(result.g_opt, grid);
    Json j = report_json(entropy_report(ad, e, V));
    Json coeffs = Json::array();
    for (const auto& h : result.g_opt.harmonics) {
        coeffs.push_back(Json::array({h.k, number(h.a), number(h.b)}));
    }
    j["g_opt"] = coeffs;
    j["iterations"] = result.trace.size();
    write_json(dir / "maximize.json", j);
    return kOk;
}

int run_command(const std::string& command, const RunConfig& cfg, const VerifyOptions& options) {
    if (command == "eigen") return run_eigen(cfg);
    if (command == "propagate") return run_propagate(cfg);
    if (command == "simulate") return run_simulate(cfg);
    if (command == "entropy") return run_entropy(cfg);
    if (command == "maximize") return run_maximize(cfg);
    if (command == "verify") return run_verify(cfg, options);
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace fkt::cli
