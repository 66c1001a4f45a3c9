#include "fkt/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fkt/errors.hpp"

namespace fkt {

AdmissibleDrift admissible_from_samples(const GridFunction& g) {
    const double lo = g.min();
    const double hi = g.max();
    if (hi - lo > 300.0) {
        throw DomainError("g oscillates by " + std::to_string(hi - lo) + " > 300; exp(2g) overflows");
    }
    // Shift by max g before exponentiating; mu~ is invariant under constants.
    const GridFunction weight = g.map([hi](double v) { return std::exp(2.0 * (v - hi)); });
    const double mass = integrate(weight);
    GridFunction mu = weight.map([mass](double v) { return v / mass; });
    const double gamma = mass * std::exp(2.0 * hi);
    return AdmissibleDrift{g, derivative(g, 1), derivative(g, 2), std::move(mu), gamma};
}

AdmissibleDrift admissible_from_spec(const HarmonicSpec& g_spec, const PeriodicGrid& grid) {
    return admissible_from_samples(sample(g_spec, grid));
}

GridFunction carre_du_champ(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    return derivative(f, 1) * derivative(g, 1);
}

double relative_entropy(const AdmissibleDrift& ad) {
    const double direct = 0.5 * integrate((ad.g2 + ad.g1 * ad.g1) * ad.mu_tilde);
    const double by_parts = -0.5 * integrate(ad.g1 * ad.g1 * ad.mu_tilde);
    if (std::abs(direct - by_parts) > 1e-9 * std::max(1.0, std::abs(by_parts))) {
        throw InconsistencyError("entropy forms disagree: " + std::to_string(direct) + " vs " +
                                 std::to_string(by_parts));
    }
    return direct;
}

Estimate entropy_finite_T_mc(const AdmissibleDrift& ad, double horizon, const McConfig& cfg,
                             EntropyStart start, double start_point) {
    if (!(horizon >= 1.0)) throw DomainError("entropy horizon must be at least 1");
    InitialLaw initial = FixedPoint{start_point};
    if (start == EntropyStart::kStationary) initial = PiecewiseLinearLaw(ad.mu_tilde);
    const auto paths =
        simulate_sde(ad.g1, initial, horizon, cfg, {admissible_integrand(ad.g1, ad.g2)});

    const auto g_end = interpolate_many(ad.g, paths.end);
    const auto g_start = interpolate_many(ad.g, paths.start);
    std::vector<double> per_path(paths.n_paths);
    for (std::size_t i = 0; i < per_path.size(); ++i) {
        const double log_rn = g_end[i] - g_start[i] - paths.integrals[0][i];
        per_path[i] = -log_rn / horizon;
    }
    return mean_and_error(per_path);
}

double pressure_value(const AdmissibleDrift& ad, const GridFunction& potential) {
    require_same_grid(ad.g, potential);
    return relative_entropy(ad) + integrate(potential * ad.mu_tilde);
}

double pressure_gap_quadrature(const AdmissibleDrift& ad, const EigenSolution& e) {
    require_same_grid(ad.g, e.F);
    const GridFunction diff = e.drift - ad.g1;
    return 0.5 * integrate(diff * diff * ad.mu_tilde);
}

double pressure_gap(const AdmissibleDrift& ad, const EigenSolution& e,
                    const GridFunction& potential) {
    const double gap = pressure_gap_quadrature(ad, e);
    const double deficit = e.lambda - pressure_value(ad, potential);
    if (std::abs(deficit - gap) > 1e-8) {
        throw InconsistencyError("lambda - P(g) = " + std::to_string(deficit) +
                                 " but the quadratic gap is " + std::to_string(gap));
    }
    return gap;
}

EntropyReport entropy_report(const AdmissibleDrift& ad, const EigenSolution& e,
                             const GridFunction& potential) {
    const double H = relative_entropy(ad);
    const double mean_V = integrate(potential * ad.mu_tilde);
    return EntropyReport{H, mean_V, H + mean_V, pressure_gap_quadrature(ad, e), e.lambda};
}

namespace {

HarmonicSpec spec_from(const std::vector<double>& coeffs) {
    HarmonicSpec s;
    for (std::size_t k = 0; k < coeffs.size() / 2; ++k) {
        s.harmonics.push_back({static_cast<int>(k + 1), coeffs[2 * k], coeffs[2 * k + 1]});
    }
    return s;
}

}  // namespace

MaximizeResult maximize_pressure(const GridFunction& potential, int K, double lr, int iters) {
    const PeriodicGrid& grid = potential.grid();
    if (K < 1 || 4 * static_cast<std::size_t>(K) > grid.size()) {
        throw DomainError("K must satisfy 1 <= K <= n/4");
    }
    if (!(lr > 0.0)) throw DomainError("learning rate must be positive");
    if (iters < 1) throw DomainError("iters must be positive");

    auto value_of = [&](const std::vector<double>& c) {
        return pressure_value(admissible_from_spec(spec_from(c), grid), potential);
    };
    constexpr double kStep = 1e-6;
    auto gradient_of = [&](std::vector<double> c) {
        std::vector<double> grad(c.size());
        for (std::size_t j = 0; j < c.size(); ++j) {
            const double keep = c[j];
            c[j] = keep + kStep;
            const double up = value_of(c);
            c[j] = keep - kStep;
            const double down = value_of(c);
            c[j] = keep;
            grad[j] = (up - down) / (2.0 * kStep);
        }
        return grad;
    };
    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };

    std::vector<double> coeffs(2 * static_cast<std::size_t>(K), 0.0);
    double value = value_of(coeffs);
    double rate = lr;
    double grad_norm = 0.0;
    std::vector<TraceEntry> trace;

    for (int it = 0; it < iters; ++it) {
        const auto grad = gradient_of(coeffs);
        grad_norm = norm(grad);
        if (grad_norm < 1e-8) {
            trace.push_back({it, value, grad_norm});
            break;
        }
        bool accepted = false;
        for (int halvings = 0; halvings <= 30; ++halvings) {
            std::vector<double> trial = coeffs;
            for (std::size_t j = 0; j < trial.size(); ++j) trial[j] += rate * grad[j];
            const double trial_value = value_of(trial);
            if (trial_value >= value) {
                coeffs = std::move(trial);
                value = trial_value;
                accepted = true;
                break;
            }
            rate *= 0.5;
        }
        trace.push_back({it, value, grad_norm});
        if (!accepted) break;
    }

    if (trace.size() >= 10) {
        const auto tail = std::span(trace).last(10);
        const auto [lo, hi] = std::minmax_element(
            tail.begin(), tail.end(),
            [](const TraceEntry& a, const TraceEntry& b) { return a.value < b.value; });
        if (hi->value - lo->value > 1e-6 && grad_norm >= 1e-6) {
            throw NonConvergence("pressure ascent still moving after " +
                                 std::to_string(trace.size()) + " iterations");
        }
    }
    return MaximizeResult{spec_from(coeffs), value, std::move(trace)};
}

}  // namespace fkt
