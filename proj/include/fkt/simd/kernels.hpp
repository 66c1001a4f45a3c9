#pragma once

// Inner loops of the path simulators. Every backend must produce results
// bit-identical to the scalar reference: same operation order, no FMA.
//
// Tables are node values padded with two wrap-around entries (see
// fkt::padded_table), so table[i + 1] is valid for every i in [0, n].
// Positions are in [0, 1).

#include <cstddef>
#include <string_view>

namespace fkt::simd {

struct StepTables {
    const double* drift = nullptr;        // b(x); nullptr means zero drift
    const double* integrand_a = nullptr;  // accumulated as a left-endpoint Riemann sum
    const double* integrand_b = nullptr;
    std::size_t n = 0;                    // grid nodes (tables hold n + 2 entries)
    double dt = 0.0;
    double sqrt_dt = 0.0;
};

/// One Euler-Maruyama step for `count` independent paths:
///   acc_a += a(x) dt;  acc_b += b(x) dt;  x <- wrap(x + drift(x) dt + sqrt_dt * noise)
/// acc_a / acc_b are ignored when the matching integrand is null.
using StepFn = void (*)(const StepTables& tables, double* x, const double* noise, double* acc_a,
                        double* acc_b, std::size_t count);

/// out[i] = periodic linear interpolation of `table` at x[i].
using InterpolateFn = void (*)(const double* table, std::size_t n, const double* x, double* out,
                               std::size_t count);

struct KernelSet {
    std::string_view name;
    StepFn step;
    InterpolateFn interpolate;
};

const KernelSet& scalar_kernels() noexcept;

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelSet* avx2_kernels() noexcept;

/// Best available backend. FKT_SIMD=scalar in the environment forces the
/// reference kernels.
const KernelSet& active_kernels() noexcept;

namespace detail {
// Shared scalar element step used by the reference kernel and by vector tails.
void step_scalar(const StepTables& t, double* x, const double* noise, double* acc_a,
                 double* acc_b, std::size_t count);
void interpolate_scalar(const double* table, std::size_t n, const double* x, double* out,
                        std::size_t count);
const KernelSet* avx2_kernel_set() noexcept;
}  // namespace detail

}  // namespace fkt::simd
