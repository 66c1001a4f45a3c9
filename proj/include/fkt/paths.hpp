#pragma once

// Batched simulation of circle-valued diffusions dX = b(X) dt + dW with
// per-path left-endpoint Riemann sums of designated grid functions, plus
// the reductions used on the results.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fkt/grid.hpp"

namespace fkt {

struct McConfig {
    std::size_t n_paths = 1;
    double dt = 1e-3;
    std::uint64_t seed = 42;

    /// Throws DomainError on n_paths == 0 or dt <= 0.
    void validate() const;
};

/// Number of steps t/dt; throws DomainError unless it is an integer
/// within 1e-9 and dt <= t.
std::size_t step_count(double t, double dt);

/// Probability law on the circle given by periodic linear interpolation of
/// a nonnegative grid density.
class PiecewiseLinearLaw {
public:
    explicit PiecewiseLinearLaw(const GridFunction& density);

    /// Inverse CDF; u in (0, 1].
    double quantile(double u) const;
    /// Mass of [0, x) for x in [0, 1].
    double cdf(double x) const;
    /// Probability of each of `bins` equal bins.
    std::vector<double> bin_masses(std::size_t bins) const;

private:
    std::vector<double> density_;  // normalized node values
    std::vector<double> cumulative_;  // mass of [0, x_i], size n + 1
    double h_;
};

struct FixedPoint {
    double x;
};
using InitialLaw = std::variant<FixedPoint, PiecewiseLinearLaw>;

struct SimulationRequest {
    std::optional<GridFunction> drift;       // zero drift when empty
    std::vector<GridFunction> integrands;    // at most two
    InitialLaw initial = FixedPoint{0.0};
    double horizon = 1.0;
    McConfig mc;
    /// Keep every `record_stride`-th position (0 keeps none).
    std::size_t record_stride = 0;
};

struct PathRow {
    double start;
    double end;
    std::span<const double> positions;  // empty unless recorded
    std::vector<double> integrals;      // one per integrand
};

/// Simulated trajectories; immutable once built.
struct PathEnsemble {
    double dt = 0.0;
    std::size_t n_steps = 0;
    std::size_t n_paths = 0;
    std::size_t record_stride = 0;
    std::size_t records_per_path = 0;
    std::vector<double> start;
    std::vector<double> end;
    std::vector<double> positions;                 // n_paths x records_per_path
    std::vector<std::vector<double>> integrals;    // [integrand][path]

    PathRow row(std::size_t path) const;
    std::span<const double> path_positions(std::size_t path) const;
};

/// Paths are independent; path i draws only from PathRng(seed, i), so the
/// ensemble is identical for any thread count.
PathEnsemble simulate_paths(const SimulationRequest& request);

/// Periodic linear interpolation of `f` at each point.
std::vector<double> interpolate_many(const GridFunction& f, std::span<const double> points);

/// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> values);

struct Estimate {
    double mean;
    double std_error;
};

/// Sample mean and standard error, computed on data shifted by the first
/// value so identical samples give an exact mean and zero error.
Estimate mean_and_error(std::span<const double> values);

/// Counts of `points` in `bins` equal bins of [0, 1), normalized to sum 1.
std::vector<double> histogram(std::span<const double> points, std::size_t bins);

/// Half the L1 distance between two probability vectors.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace fkt
