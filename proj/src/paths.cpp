#include "fkt/paths.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fkt/errors.hpp"
#include "fkt/rng.hpp"
#include "fkt/simd/kernels.hpp"

namespace fkt {

namespace {

constexpr std::size_t kBlock = 256;

}  // namespace

void McConfig::validate() const {
    if (n_paths == 0) throw DomainError("n_paths must be at least 1");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
}

std::size_t step_count(double t, double dt) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time horizon must be positive");
    if (!(dt > 0.0) || dt > t) throw DomainError("dt must satisfy 0 < dt <= t");
    const double ratio = t / dt;
    const double steps = std::round(ratio);
    if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, steps)) {
        throw DomainError("t/dt = " + std::to_string(ratio) + " is not an integer step count");
    }
    return static_cast<std::size_t>(steps);
}

PiecewiseLinearLaw::PiecewiseLinearLaw(const GridFunction& density)
    : h_(density.grid().spacing()) {
    const std::size_t n = density.size();
    if (density.min() < 0.0) throw DomainError("initial density must be nonnegative");
    const double total = integrate(density);
    if (!(total > 0.0)) throw DomainError("initial density has zero mass");
    density_.resize(n);
    for (std::size_t i = 0; i < n; ++i) density_[i] = density[i] / total;
    cumulative_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double next = density_[(i + 1) % n];
        cumulative_[i + 1] = cumulative_[i] + 0.5 * h_ * (density_[i] + next);
    }
}

double PiecewiseLinearLaw::cdf(double x) const {
    const std::size_t n = density_.size();
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double s = x / h_;
    const auto i = std::min(static_cast<std::size_t>(s), n - 1);
    const double frac = s - static_cast<double>(i);
    const double lo = density_[i];
    const double hi = density_[(i + 1) % n];
    return cumulative_[i] + h_ * (lo * frac + 0.5 * (hi - lo) * frac * frac);
}

double PiecewiseLinearLaw::quantile(double u) const {
    const std::size_t n = density_.size();
    const double target = u * cumulative_[n];
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    std::size_t i = (it == cumulative_.begin()) ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    i = std::min(i, n - 1);
    const double r = target - cumulative_[i];
    const double lo = density_[i] * h_;
    const double slope = 0.5 * (density_[(i + 1) % n] - density_[i]) * h_;
    // Solve slope*s^2 + lo*s = r in the stable form.
    const double disc = std::max(0.0, lo * lo + 4.0 * slope * r);
    const double denom = lo + std::sqrt(disc);
    double s = denom > 0.0 ? 2.0 * r / denom : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return wrap_unit((static_cast<double>(i) + s) * h_);
}

std::vector<double> PiecewiseLinearLaw::bin_masses(std::size_t bins) const {
    std::vector<double> p(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double a = static_cast<double>(b) / static_cast<double>(bins);
        const double c = static_cast<double>(b + 1) / static_cast<double>(bins);
        p[b] = cdf(c) - cdf(a);
    }
    return p;
}

PathRow PathEnsemble::row(std::size_t path) const {
    PathRow r{start[path], end[path], path_positions(path), {}};
    for (const auto& column : integrals) r.integrals.push_back(column[path]);
    return r;
}

std::span<const double> PathEnsemble::path_positions(std::size_t path) const {
    if (records_per_path == 0) return {};
    return std::span<const double>(positions).subspan(path * records_per_path, records_per_path);
}

PathEnsemble simulate_paths(const SimulationRequest& req) {
    req.mc.validate();
    if (req.integrands.size() > 2) throw DomainError("at most two path integrands");
    const std::size_t steps = step_count(req.horizon, req.mc.dt);
    const std::size_t n_paths = req.mc.n_paths;

    std::optional<PeriodicGrid> grid;
    auto adopt = [&](const GridFunction& f) {
        if (grid && !(*grid == f.grid())) throw SizingError("simulation inputs on different grids");
        grid = f.grid();
    };
    if (req.drift) adopt(*req.drift);
    for (const auto& f : req.integrands) adopt(f);

    std::vector<double> drift_table, a_table, b_table;
    simd::StepTables tables;
    tables.n = grid ? grid->size() : 4;
    tables.dt = req.mc.dt;
    tables.sqrt_dt = std::sqrt(req.mc.dt);
    if (req.drift) {
        drift_table = padded_table(*req.drift);
        tables.drift = drift_table.data();
    }
    if (!req.integrands.empty()) {
        a_table = padded_table(req.integrands[0]);
        tables.integrand_a = a_table.data();
    }
    if (req.integrands.size() > 1) {
        b_table = padded_table(req.integrands[1]);
        tables.integrand_b = b_table.data();
    }

    PathEnsemble out;
    out.dt = req.mc.dt;
    out.n_steps = steps;
    out.n_paths = n_paths;
    out.record_stride = req.record_stride;
    out.records_per_path = req.record_stride ? steps / req.record_stride + 1 : 0;
    out.start.resize(n_paths);
    out.end.resize(n_paths);
    out.positions.resize(out.records_per_path * n_paths);
    out.integrals.assign(req.integrands.size(), std::vector<double>(n_paths, 0.0));

    const auto& kernels = simd::active_kernels();
    const std::size_t n_blocks = (n_paths + kBlock - 1) / kBlock;

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(n_blocks); ++blk) {
        const std::size_t first = static_cast<std::size_t>(blk) * kBlock;
        const std::size_t count = std::min(kBlock, n_paths - first);
        std::vector<double> x(count), acc_a(count, 0.0), acc_b(count, 0.0);
        std::vector<double> noise_even(count), noise_odd(count);

        for (std::size_t j = 0; j < count; ++j) {
            if (const auto* p = std::get_if<FixedPoint>(&req.initial)) {
                x[j] = wrap_unit(p->x);
            } else {
                const PathRng init(req.mc.seed, first + j, Stream::kInitialState);
                x[j] = std::get<PiecewiseLinearLaw>(req.initial).quantile(init.uniform_pair(0)[0]);
            }
            out.start[first + j] = x[j];
        }
        auto record = [&](std::size_t slot) {
            for (std::size_t j = 0; j < count; ++j) {
                out.positions[(first + j) * out.records_per_path + slot] = x[j];
            }
        };
        if (out.records_per_path) record(0);

        for (std::size_t k = 0; k < steps; ++k) {
            if (k % 2 == 0) {
                for (std::size_t j = 0; j < count; ++j) {
                    const auto z = PathRng(req.mc.seed, first + j).normal_pair(k / 2);
                    noise_even[j] = z[0];
                    noise_odd[j] = z[1];
                }
            }
            const double* noise = (k % 2 == 0) ? noise_even.data() : noise_odd.data();
            kernels.step(tables, x.data(), noise, acc_a.data(), acc_b.data(), count);
            if (out.records_per_path && (k + 1) % req.record_stride == 0) {
                record((k + 1) / req.record_stride);
            }
        }

        for (std::size_t j = 0; j < count; ++j) {
            out.end[first + j] = x[j];
            if (!out.integrals.empty()) out.integrals[0][first + j] = acc_a[j];
            if (out.integrals.size() > 1) out.integrals[1][first + j] = acc_b[j];
        }
    }
    return out;
}

std::vector<double> interpolate_many(const GridFunction& f, std::span<const double> points) {
    const auto table = padded_table(f);
    std::vector<double> wrapped(points.size()), out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) wrapped[i] = wrap_unit(points[i]);
    simd::active_kernels().interpolate(table.data(), f.size(), wrapped.data(), out.data(),
                                       out.size());
    return out;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Estimate mean_and_error(std::span<const double> values) {
    if (values.empty()) throw DomainError("no samples");
    const double shift = values[0];
    std::vector<double> d(values.size()), d2(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        d[i] = values[i] - shift;
        d2[i] = d[i] * d[i];
    }
    const double n = static_cast<double>(values.size());
    const double s1 = pairwise_sum(d);
    const double s2 = pairwise_sum(d2);
    const double mean = shift + s1 / n;
    if (values.size() < 2) return {mean, 0.0};
    const double var = std::max(0.0, (s2 - s1 * s1 / n) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

std::vector<double> histogram(std::span<const double> points, std::size_t bins) {
    if (bins == 0) throw DomainError("histogram needs at least one bin");
    std::vector<double> counts(bins, 0.0);
    for (double x : points) {
        auto b = static_cast<std::size_t>(wrap_unit(x) * static_cast<double>(bins));
        counts[std::min(b, bins - 1)] += 1.0;
    }
    const double total = static_cast<double>(points.size());
    if (total > 0) {
        for (double& c : counts) c /= total;
    }
    return counts;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw SizingError("total variation of vectors of different length");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace fkt
