#include "fkt/feynman_kac.hpp"

#include <cmath>
#include <string>

#include "fkt/errors.hpp"

namespace fkt {

CrankNicolson::CrankNicolson(const GridFunction& potential, double dt, Laplacian scheme)
    : grid_(potential.grid()), dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
    const double vmax = potential.max();
    if (vmax > 0.0 && dt * vmax >= 2.0) {
        throw DomainError("dt = " + std::to_string(dt) + " exceeds the Crank-Nicolson cap 2/max(V) = " +
                          std::to_string(2.0 / vmax));
    }
    const auto op = build_generator(potential, scheme);
    const auto n = op.a.rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    explicit_part_ = id + (0.5 * dt) * op.a;
    implicit_part_.compute(id - (0.5 * dt) * op.a);
    if (implicit_part_.info() != Eigen::Success) {
        throw SolverFailure("Crank-Nicolson implicit matrix is not positive definite");
    }
}

void CrankNicolson::advance(Eigen::MatrixXd& u, std::size_t steps) const {
    for (std::size_t k = 0; k < steps; ++k) {
        u = implicit_part_.solve(explicit_part_ * u);
    }
}

GridFunction CrankNicolson::propagate(const GridFunction& f, std::size_t steps) const {
    if (!(f.grid() == grid_)) throw SizingError("initial data on a different grid");
    Eigen::MatrixXd u = Eigen::Map<const Eigen::VectorXd>(f.values().data(),
                                                          static_cast<Eigen::Index>(f.size()));
    advance(u, steps);
    return GridFunction(grid_, std::vector<double>(u.data(), u.data() + u.size()));
}

GridFunction propagate_pde(const GridFunction& potential, const GridFunction& f,
                           const PropagatorConfig& cfg, Laplacian scheme) {
    require_same_grid(potential, f);
    const std::size_t steps = step_count(cfg.t, cfg.dt);
    return CrankNicolson(potential, cfg.dt, scheme).propagate(f, steps);
}

Estimate propagate_mc(const GridFunction& potential, const GridFunction& f, double x,
                      const McConfig& cfg, double t) {
    require_same_grid(potential, f);
    SimulationRequest req;
    req.integrands = {potential};
    req.initial = FixedPoint{x};
    req.horizon = t;
    req.mc = cfg;
    const auto paths = simulate_paths(req);

    auto values = interpolate_many(f, paths.end);
    const auto& path_integral = paths.integrals[0];
    for (std::size_t i = 0; i < values.size(); ++i) values[i] *= std::exp(path_integral[i]);
    return mean_and_error(values);
}

double check_selfadjoint(const GridFunction& potential, const GridFunction& f,
                         const GridFunction& g, double t, double dt, Laplacian scheme) {
    require_same_grid(potential, f);
    require_same_grid(potential, g);
    const std::size_t steps = step_count(t, dt);
    const CrankNicolson cn(potential, dt, scheme);
    const auto pf = cn.propagate(f, steps);
    const auto pg = cn.propagate(g, steps);
    double pf_g = 0.0, f_pg = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        pf_g += pf[i] * g[i];
        f_pg += f[i] * pg[i];
    }
    const double h = f.grid().spacing();
    return std::abs(h * pf_g - h * f_pg);
}

}  // namespace fkt
