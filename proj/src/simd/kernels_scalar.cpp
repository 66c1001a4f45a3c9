#include <cmath>

#include "fkt/simd/kernels.hpp"

namespace fkt::simd::detail {

namespace {

inline double lerp_table(const double* table, std::ptrdiff_t idx, double frac) {
    const double lo = table[idx];
    const double hi = table[idx + 1];
    return lo + frac * (hi - lo);
}

}  // namespace

void step_scalar(const StepTables& t, double* x, const double* noise, double* acc_a,
                 double* acc_b, std::size_t count) {
    const double n = static_cast<double>(t.n);
    for (std::size_t i = 0; i < count; ++i) {
        const double s = x[i] * n;
        const double fl = std::floor(s);
        const double frac = s - fl;
        const auto idx = static_cast<std::ptrdiff_t>(fl);
        if (t.integrand_a) acc_a[i] = acc_a[i] + lerp_table(t.integrand_a, idx, frac) * t.dt;
        if (t.integrand_b) acc_b[i] = acc_b[i] + lerp_table(t.integrand_b, idx, frac) * t.dt;
        const double drift = t.drift ? lerp_table(t.drift, idx, frac) * t.dt : 0.0;
        double y = (x[i] + drift) + t.sqrt_dt * noise[i];
        y = y - std::floor(y);
        x[i] = (y >= 1.0) ? 0.0 : y;
    }
}

void interpolate_scalar(const double* table, std::size_t n, const double* x, double* out,
                        std::size_t count) {
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < count; ++i) {
        const double s = x[i] * nd;
        const double fl = std::floor(s);
        out[i] = lerp_table(table, static_cast<std::ptrdiff_t>(fl), s - fl);
    }
}

}  // namespace fkt::simd::detail
