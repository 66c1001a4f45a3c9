#pragma once

// Uniform periodic grid on the unit circle [0,1) and the calculus on it:
// harmonic sampling, Fourier differentiation, rectangle-rule quadrature and
// periodic linear interpolation.

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace fkt {

class PeriodicGrid {
public:
    /// Throws SizingError unless n >= 4 and n is even.
    explicit PeriodicGrid(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return 1.0 / static_cast<double>(n_); }
    double node(std::size_t i) const noexcept {
        return static_cast<double>(i) / static_cast<double>(n_);
    }
    std::vector<double> nodes() const;

    friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

private:
    std::size_t n_;
};

PeriodicGrid make_grid(std::size_t n);

/// Real samples on a PeriodicGrid. Values are finite by construction.
class GridFunction {
public:
    GridFunction(PeriodicGrid grid, std::vector<double> values);
    /// Constant function.
    GridFunction(PeriodicGrid grid, double value);

    const PeriodicGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    double min() const;
    double max() const;

    /// Applies `op` node-wise; result must be finite.
    template <class Op>
    GridFunction map(Op op) const {
        std::vector<double> out(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) out[i] = op(values_[i]);
        return GridFunction(grid_, std::move(out));
    }

    /// Shifts samples by `steps` nodes: result(x_i) = f(x_{i+steps}).
    GridFunction rotated(std::ptrdiff_t steps) const;

private:
    PeriodicGrid grid_;
    std::vector<double> values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction operator/(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& f);
GridFunction operator+(const GridFunction& f, double c);

/// Throws SizingError if the grids differ.
void require_same_grid(const GridFunction& a, const GridFunction& b);

struct Harmonic {
    int k;
    double a;  // cosine coefficient
    double b;  // sine coefficient
};

/// constant + sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x)
struct HarmonicSpec {
    double constant = 0.0;
    std::vector<Harmonic> harmonics;

    double evaluate(double x) const;
    int max_wavenumber() const;
    /// Coefficient-wise sum; harmonics with equal k are merged.
    HarmonicSpec merged(const HarmonicSpec& other) const;
};

/// Pointwise evaluation at the nodes. Throws AliasingError if some k >= n/2
/// and DomainError on k <= 0 or repeated k.
GridFunction sample(const HarmonicSpec& spec, const PeriodicGrid& grid);

/// Fourier differentiation of order 1 or 2. The Nyquist mode is dropped for
/// the first derivative and kept (as -(pi n)^2) for the second.
GridFunction derivative(const GridFunction& f, int order);

/// Rectangle rule h * sum f_i.
double integrate(const GridFunction& f);

/// Periodic linear interpolation at an arbitrary point of the circle.
double interpolate(const GridFunction& f, double x);

/// Wraps x into [0,1).
double wrap_unit(double x) noexcept;

/// Node values followed by f_0, f_1 so that table[i+1] is valid for i <= n.
std::vector<double> padded_table(const GridFunction& f);

/// Reads a two-column `x,value` CSV whose x column equals the grid nodes.
GridFunction load_csv(const std::filesystem::path& path, const PeriodicGrid& grid);

}  // namespace fkt
