#include "fkt/gibbs.hpp"

#include <cmath>

#include "fkt/errors.hpp"

namespace fkt {

GridFunction normalized_semigroup(const EigenSolution& e, const GridFunction& potential,
                                  const GridFunction& f, double t, double dt, Laplacian scheme) {
    require_same_grid(e.F, f);
    const auto u = propagate_pde(potential, e.F * f, PropagatorConfig{t, dt}, scheme);
    const double growth = std::exp(e.lambda * t);
    return u / e.F.map([growth](double v) { return growth * v; });
}

GridFunction generator_apply(const EigenSolution& e, const GridFunction& f) {
    require_same_grid(e.F, f);
    return 0.5 * derivative(f, 2) + e.drift * derivative(f, 1);
}

double invariance_residual(const EigenSolution& e, const GridFunction& f) {
    return std::abs(integrate(generator_apply(e, f) * gibbs_density(e)));
}

PathEnsemble simulate_sde(const GridFunction& drift, const InitialLaw& initial, double horizon,
                          const McConfig& cfg, std::vector<GridFunction> integrands,
                          std::size_t record_stride) {
    for (const auto& f : integrands) require_same_grid(drift, f);
    SimulationRequest req;
    req.drift = drift;
    req.integrands = std::move(integrands);
    req.initial = initial;
    req.horizon = horizon;
    req.mc = cfg;
    req.record_stride = record_stride;
    return simulate_paths(req);
}

RnWeight rn_weight(const PathRow& path, const EigenSolution& e, double t, std::size_t v_slot) {
    if (v_slot >= path.integrals.size()) throw DomainError("path carries no V integral");
    const double exponent = interpolate(e.log_F, path.end) - interpolate(e.log_F, path.start) -
                            (e.lambda * t - path.integrals[v_slot]);
    return RnWeight{std::exp(exponent)};
}

GridFunction admissible_integrand(const GridFunction& g1, const GridFunction& g2) {
    return 0.5 * (g2 + g1 * g1);
}

RnWeight rn_weight_admissible(const PathRow& path, const GridFunction& g, std::size_t slot) {
    if (slot >= path.integrals.size()) throw DomainError("path carries no admissible integral");
    const double exponent =
        interpolate(g, path.end) - interpolate(g, path.start) - path.integrals[slot];
    return RnWeight{std::exp(exponent)};
}

}  // namespace fkt
