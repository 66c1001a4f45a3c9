#include "fkt/spectral.hpp"

#include <lapacke.h>

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <vector>

#include "fkt/errors.hpp"

namespace fkt {

namespace {

// First row of the Fourier second-derivative matrix on [0,1). Built for
// offsets 1..n/2 and mirrored, so the circulant is symmetric bit-for-bit;
// the diagonal is minus the off-diagonal sum so constants are annihilated.
std::vector<double> fourier_row(std::size_t n) {
    std::vector<double> c(n, 0.0);
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    const double scale = 4.0 * std::numbers::pi * std::numbers::pi;
    for (std::size_t d = 1; d <= n / 2; ++d) {
        const double s = std::sin(static_cast<double>(d) * h / 2.0);
        const double sign = (d % 2 == 0) ? -1.0 : 1.0;
        c[d] = scale * sign / (2.0 * s * s);
        c[n - d] = c[d];
    }
    double off = 0.0;
    for (std::size_t d = 1; d < n; ++d) off += c[d];
    c[0] = -off;
    return c;
}

}  // namespace

Eigen::MatrixXd second_derivative_matrix(const PeriodicGrid& grid, Laplacian scheme) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(n, n);
    if (scheme == Laplacian::kSecondOrder) {
        const double inv_h2 = static_cast<double>(n) * static_cast<double>(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            d2(i, i) = -2.0 * inv_h2;
            d2(i, (i + 1) % n) = inv_h2;
            d2(i, (i + n - 1) % n) = inv_h2;
        }
        return d2;
    }
    const auto row = fourier_row(grid.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) d2(i, j) = row[static_cast<std::size_t>((j - i + n) % n)];
    }
    return d2;
}

OperatorMatrix build_generator(const GridFunction& potential, Laplacian scheme) {
    Eigen::MatrixXd a = 0.5 * second_derivative_matrix(potential.grid(), scheme);
    for (std::size_t i = 0; i < potential.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        a(k, k) += potential[i];
    }
    return OperatorMatrix{potential.grid(), scheme, std::move(a)};
}

EigenSolution principal_eigenpair(const OperatorMatrix& op) {
    const auto n = static_cast<lapack_int>(op.grid.size());
    Eigen::MatrixXd work = op.a;  // dsyevr overwrites its input
    std::vector<double> w(static_cast<std::size_t>(n));  // full length: used as workspace
    Eigen::MatrixXd z(n, 2);
    std::vector<lapack_int> support(4);
    lapack_int found = 0;
    const lapack_int info =
        LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, work.data(), n, 0.0, 0.0, n - 1, n,
                       0.0, &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != 2) {
        throw SolverFailure("dsyevr failed (info=" + std::to_string(info) + ")");
    }
    const double gap = w[1] - w[0];  // ascending: w[0] is the second eigenvalue
    if (!(gap > 1e-12)) {
        throw DegenerateGap("principal eigenvalue not simple (gap " + std::to_string(gap) + ")");
    }

    // One step of shifted inverse iteration: the MRRR vector's residual grows
    // like n * eps * |A|, the polished one stays near eps * |A|.
    const Eigen::Index dim = op.a.rows();
    const double shift = w[1] + 1e-8 * gap;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(op.a -
                                                  shift * Eigen::MatrixXd::Identity(dim, dim));
    Eigen::VectorXd v = lu.solve(Eigen::VectorXd(z.col(1)));
    v /= v.norm();
    const double lambda = v.dot(op.a * v);  // Rayleigh quotient of the polished vector
    if (v.sum() < 0.0) v = -v;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(v(i) > 0.0)) {
            throw PositivityViolation("principal eigenvector nonpositive at node " +
                                      std::to_string(i));
        }
    }
    const double h = op.grid.spacing();
    v /= std::sqrt(h * v.squaredNorm());

    const Eigen::VectorXd r = op.a * v - lambda * v;
    const double residual = r.lpNorm<Eigen::Infinity>() / v.lpNorm<Eigen::Infinity>();

    GridFunction F(op.grid, std::vector<double>(v.data(), v.data() + n));
    GridFunction log_F = F.map([](double x) { return std::log(x); });
    GridFunction drift = derivative(log_F, 1);
    const double gamma = integrate(F * F);
    return EigenSolution{lambda,           std::move(F), gamma, std::move(log_F),
                         std::move(drift), gap,          residual};
}

EigenSolution solve_principal(const GridFunction& potential, Laplacian scheme) {
    return principal_eigenpair(build_generator(potential, scheme));
}

GridFunction gibbs_density(const EigenSolution& e) {
    const double g = e.gamma;
    return (e.F * e.F).map([g](double v) { return v / g; });
}

GridFunction eigen_probability(const EigenSolution& e) {
    const double mass = integrate(e.F);
    return e.F.map([mass](double v) { return v / mass; });
}

int critical_point_count(const GridFunction& f) {
    const std::size_t n = f.size();
    std::vector<int> signs;
    signs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = f[(i + 1) % n] - f[i];
        if (d > 0.0) signs.push_back(1);
        else if (d < 0.0) signs.push_back(-1);
    }
    int changes = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
    }
    return changes;
}

}  // namespace fkt
