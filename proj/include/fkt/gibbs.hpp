#pragma once

// The Doob-normalized (Gibbs) semigroup built from the principal eigenpair,
// its generator, the drifted SDE realizing it, and Radon-Nikodym path
// weights against Brownian motion.

#include "fkt/feynman_kac.hpp"
#include "fkt/paths.hpp"
#include "fkt/spectral.hpp"

namespace fkt {

/// P_t(F f) / (exp(lambda t) F), node-wise.
GridFunction normalized_semigroup(const EigenSolution& e, const GridFunction& potential,
                                  const GridFunction& f, double t, double dt,
                                  Laplacian scheme = Laplacian::kFourier);

/// 1/2 f'' + (log F)' f'.
GridFunction generator_apply(const EigenSolution& e, const GridFunction& f);

/// |integral of generator_apply(e, f) against mu_V|.
double invariance_residual(const EigenSolution& e, const GridFunction& f);

/// Euler-Maruyama for dX = b(X) dt + dW on the circle. `integrands` are
/// accumulated along each path (left-endpoint rule).
PathEnsemble simulate_sde(const GridFunction& drift, const InitialLaw& initial, double horizon,
                          const McConfig& cfg, std::vector<GridFunction> integrands = {},
                          std::size_t record_stride = 0);

struct RnWeight {
    double value;
};

/// exp{log F(w_t) - log F(w_0) - (lambda t - int V)}. `v_slot` selects the
/// row integral holding the Riemann sum of V.
RnWeight rn_weight(const PathRow& path, const EigenSolution& e, double t,
                   std::size_t v_slot = 0);

/// 1/2 (g'' + g'^2), the integrand of the admissible weight.
GridFunction admissible_integrand(const GridFunction& g1, const GridFunction& g2);

/// exp{g(w_t) - g(w_0) - int 1/2 (g'' + g'^2)}. `slot` selects the row
/// integral of admissible_integrand.
RnWeight rn_weight_admissible(const PathRow& path, const GridFunction& g, std::size_t slot = 0);

}  // namespace fkt
