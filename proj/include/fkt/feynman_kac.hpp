#pragma once

// The Feynman-Kac semigroup P_t^V f(x) = E_x[exp(int_0^t V(X_r) dr) f(X_t)]
// by two independent routes: Crank-Nicolson on du/dt = (1/2 u'' + V u) and
// Monte-Carlo over Brownian paths.

#include <Eigen/Cholesky>

#include "fkt/paths.hpp"
#include "fkt/spectral.hpp"

namespace fkt {

struct PropagatorConfig {
    double t = 1.0;
    double dt = 1e-3;
};

/// Crank-Nicolson stepper (I - dt/2 A) u_{k+1} = (I + dt/2 A) u_k, factored once.
class CrankNicolson {
public:
    /// Throws DomainError when dt exceeds the stability cap 2 / max(V)
    /// (the implicit matrix would lose definiteness) and SolverFailure if
    /// the factorization fails anyway.
    CrankNicolson(const GridFunction& potential, double dt,
                  Laplacian scheme = Laplacian::kFourier);

    double dt() const noexcept { return dt_; }

    /// Applies `steps` steps to every column of `u` in place.
    void advance(Eigen::MatrixXd& u, std::size_t steps) const;

    GridFunction propagate(const GridFunction& f, std::size_t steps) const;

private:
    PeriodicGrid grid_;
    double dt_;
    Eigen::MatrixXd explicit_part_;
    Eigen::LLT<Eigen::MatrixXd> implicit_part_;
};

GridFunction propagate_pde(const GridFunction& potential, const GridFunction& f,
                           const PropagatorConfig& cfg, Laplacian scheme = Laplacian::kFourier);

/// Weighted Brownian average at the start point x; f and V interpolated
/// linearly, path integral by the left-endpoint rule.
Estimate propagate_mc(const GridFunction& potential, const GridFunction& f, double x,
                      const McConfig& cfg, double t);

/// |<P_t f, g> - <f, P_t g>| in L^2(dx), both sides from propagate_pde.
double check_selfadjoint(const GridFunction& potential, const GridFunction& f,
                         const GridFunction& g, double t, double dt,
                         Laplacian scheme = Laplacian::kFourier);

}  // namespace fkt
