#pragma once

// The operator 1/2 d^2/dx^2 + V on the circle, its principal (Perron)
// eigenpair and the measures derived from it.

#include <Eigen/Dense>

#include "fkt/grid.hpp"

namespace fkt {

enum class Laplacian {
    /// Fourier collocation second derivative (symmetric circulant).
    kFourier,
    /// Periodic (1, -2, 1) / h^2 stencil, second-order accurate.
    kSecondOrder,
};

/// A = 1/2 D2 + diag(V), exactly symmetric.
struct OperatorMatrix {
    PeriodicGrid grid;
    Laplacian scheme;
    Eigen::MatrixXd a;
};

/// The second-derivative matrix alone (no 1/2, no potential).
Eigen::MatrixXd second_derivative_matrix(const PeriodicGrid& grid, Laplacian scheme);

OperatorMatrix build_generator(const GridFunction& potential,
                               Laplacian scheme = Laplacian::kFourier);

struct EigenSolution {
    double lambda;         // principal eigenvalue
    GridFunction F;        // positive eigenfunction, integral of F^2 is 1
    double gamma;          // integral of F^2
    GridFunction log_F;
    GridFunction drift;    // (log F)'
    double spectral_gap;   // lambda minus the second eigenvalue
    double residual;       // |(A - lambda) F|_inf / |F|_inf
};

/// Dense symmetric eigensolve for the top two eigenvalues.
/// Throws PositivityViolation or DegenerateGap.
EigenSolution principal_eigenpair(const OperatorMatrix& op);

/// Convenience: principal_eigenpair(build_generator(V, scheme)).
EigenSolution solve_principal(const GridFunction& potential,
                              Laplacian scheme = Laplacian::kFourier);

/// mu_V = F^2 / gamma.
GridFunction gibbs_density(const EigenSolution& e);

/// nu_V = F / integral(F).
GridFunction eigen_probability(const EigenSolution& e);

/// Sign changes of the forward differences around the cycle.
int critical_point_count(const GridFunction& f);

}  // namespace fkt
