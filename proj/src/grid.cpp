#include "fkt/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "fkt/errors.hpp"

namespace fkt {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
struct FftPlans {
    fftw_plan forward;
    fftw_plan backward;
};

const FftPlans& plans_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, FftPlans> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> real(n);
    std::vector<fftw_complex> spec(n / 2 + 1);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    FftPlans p{fftw_plan_dft_r2c_1d(len, real.data(), spec.data(), flags),
               fftw_plan_dft_c2r_1d(len, spec.data(), real.data(), flags)};
    return cache.emplace(n, p).first->second;
}

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite value");
    }
}

}  // namespace

PeriodicGrid::PeriodicGrid(std::size_t n) : n_(n) {
    if (n < 4 || n % 2 != 0) {
        throw SizingError("grid size must be even and at least 4, got " + std::to_string(n));
    }
}

std::vector<double> PeriodicGrid::nodes() const {
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
    return x;
}

PeriodicGrid make_grid(std::size_t n) { return PeriodicGrid(n); }

GridFunction::GridFunction(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw SizingError("grid function has " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_.size()));
    }
    require_finite(values_, "grid function");
}

GridFunction::GridFunction(PeriodicGrid grid, double value)
    : GridFunction(grid, std::vector<double>(grid.size(), value)) {}

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

GridFunction GridFunction::rotated(std::ptrdiff_t steps) const {
    const auto n = static_cast<std::ptrdiff_t>(values_.size());
    std::vector<double> out(values_.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = values_[((i + steps) % n + n) % n];
    return GridFunction(grid_, std::move(out));
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid() == b.grid())) {
        throw SizingError("grid functions live on different grids (" +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
}

namespace {

template <class Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
    require_same_grid(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
    return GridFunction(a.grid(), std::move(out));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, std::plus<>{});
}
GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, std::minus<>{});
}
GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, std::multiplies<>{});
}
GridFunction operator/(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, std::divides<>{});
}
GridFunction operator*(double s, const GridFunction& f) {
    return f.map([s](double v) { return s * v; });
}
GridFunction operator+(const GridFunction& f, double c) {
    return f.map([c](double v) { return v + c; });
}

double HarmonicSpec::evaluate(double x) const {
    double sum = constant;
    for (const auto& h : harmonics) {
        const double phase = 2.0 * std::numbers::pi * h.k * x;
        sum += h.a * std::cos(phase) + h.b * std::sin(phase);
    }
    return sum;
}

int HarmonicSpec::max_wavenumber() const {
    int k = 0;
    for (const auto& h : harmonics) k = std::max(k, h.k);
    return k;
}

HarmonicSpec HarmonicSpec::merged(const HarmonicSpec& other) const {
    HarmonicSpec out{constant + other.constant, harmonics};
    for (const auto& h : other.harmonics) {
        auto it = std::find_if(out.harmonics.begin(), out.harmonics.end(),
                               [&](const Harmonic& e) { return e.k == h.k; });
        if (it == out.harmonics.end()) {
            out.harmonics.push_back(h);
        } else {
            it->a += h.a;
            it->b += h.b;
        }
    }
    return out;
}

GridFunction sample(const HarmonicSpec& spec, const PeriodicGrid& grid) {
    std::set<int> seen;
    for (const auto& h : spec.harmonics) {
        if (h.k <= 0) throw DomainError("wavenumber must be positive, got " + std::to_string(h.k));
        if (!seen.insert(h.k).second) {
            throw DomainError("wavenumber " + std::to_string(h.k) + " repeated");
        }
        if (2 * static_cast<std::size_t>(h.k) >= grid.size()) {
            throw AliasingError("wavenumber " + std::to_string(h.k) + " aliases on a grid of " +
                                std::to_string(grid.size()) + " nodes");
        }
    }
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = spec.evaluate(grid.node(i));
    return GridFunction(grid, std::move(v));
}

GridFunction derivative(const GridFunction& f, int order) {
    if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
    const std::size_t n = f.size();
    // Constants differentiate to exact zeros rather than transform roundoff.
    if (f.min() == f.max()) return GridFunction(f.grid(), 0.0);
    const auto& plans = plans_for(n);

    std::vector<double> in(f.values().begin(), f.values().end());
    std::vector<std::complex<double>> spec(n / 2 + 1);
    auto* spec_ptr = reinterpret_cast<fftw_complex*>(spec.data());
    fftw_execute_dft_r2c(plans.forward, in.data(), spec_ptr);

    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double w = two_pi * static_cast<double>(k);
        if (order == 1) {
            spec[k] *= (k == n / 2) ? std::complex<double>(0.0) : std::complex<double>(0.0, w);
        } else {
            spec[k] *= -w * w;
        }
    }

    std::vector<double> out(n);
    fftw_execute_dft_c2r(plans.backward, spec_ptr, out.data());
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    return GridFunction(f.grid(), std::move(out));
}

double integrate(const GridFunction& f) {
    double sum = 0.0;
    for (double v : f.values()) sum += v;
    return sum * f.grid().spacing();
}

double wrap_unit(double x) noexcept {
    double y = x - std::floor(x);
    return y >= 1.0 ? 0.0 : y;
}

double interpolate(const GridFunction& f, double x) {
    const std::size_t n = f.size();
    const double s = wrap_unit(x) * static_cast<double>(n);
    const double fl = std::floor(s);
    const double frac = s - fl;
    const std::size_t i = static_cast<std::size_t>(fl) % n;
    const double lo = f[i];
    const double hi = f[(i + 1) % n];
    return lo + frac * (hi - lo);
}

std::vector<double> padded_table(const GridFunction& f) {
    std::vector<double> t(f.values().begin(), f.values().end());
    t.push_back(f[0]);
    t.push_back(f[1]);
    return t;
}

GridFunction load_csv(const std::filesystem::path& path, const PeriodicGrid& grid) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path.string());
    std::string line;
    std::vector<double> values;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.find_first_of("0123456789") != 0 && line[0] != '-' &&
            line[0] != '.') {
            continue;  // header
        }
        std::istringstream row(line);
        std::string xs, vs;
        if (!std::getline(row, xs, ',') || !std::getline(row, vs)) {
            throw DomainError(path.string() + ":" + std::to_string(line_no) + ": expected x,value");
        }
        double x = 0, v = 0;
        try {
            x = std::stod(xs);
            v = std::stod(vs);
        } catch (const std::exception&) {
            throw DomainError(path.string() + ":" + std::to_string(line_no) + ": bad number");
        }
        const std::size_t i = values.size();
        if (i >= grid.size() || std::abs(x - grid.node(i)) > 1e-12) {
            throw DomainError(path.string() + ":" + std::to_string(line_no) + ": x=" + xs +
                              " does not match grid node " + std::to_string(i));
        }
        values.push_back(v);
    }
    if (values.size() != grid.size()) {
        throw SizingError(path.string() + ": " + std::to_string(values.size()) +
                          " rows for a grid of " + std::to_string(grid.size()));
    }
    return GridFunction(grid, std::move(values));
}

}  // namespace fkt
