#pragma once

// Relative entropy of admissible (drift-g') diffusions, the pressure
// functional H + int V dmu~, the exact quadratic gap to lambda_V, and a
// gradient-ascent witness of sup P = lambda_V.

#include <vector>

#include "fkt/gibbs.hpp"

namespace fkt {

/// An admissible drift g with its derivatives and stationary law
/// mu~ = exp(2g) / gamma~.
struct AdmissibleDrift {
    GridFunction g;
    GridFunction g1;
    GridFunction g2;
    GridFunction mu_tilde;
    double gamma_tilde;
};

/// Throws DomainError when max g - min g > 300.
AdmissibleDrift admissible_from_samples(const GridFunction& g);
AdmissibleDrift admissible_from_spec(const HarmonicSpec& g_spec, const PeriodicGrid& grid);

/// Gamma(f, g) = f' g'.
GridFunction carre_du_champ(const GridFunction& f, const GridFunction& g);

/// 1/2 int (g'' + g'^2) dmu~; throws InconsistencyError when it differs from
/// the integrated-by-parts form -1/2 int g'^2 dmu~ by more than 1e-9.
double relative_entropy(const AdmissibleDrift& ad);

enum class EntropyStart {
    kStationary,  // w_0 ~ mu~
    kPoint,       // w_0 = start_point
};

/// Monte-Carlo estimate of H_T / T from the path form of the entropy.
Estimate entropy_finite_T_mc(const AdmissibleDrift& ad, double horizon, const McConfig& cfg,
                             EntropyStart start = EntropyStart::kStationary,
                             double start_point = 0.0);

/// relative_entropy + int V dmu~.
double pressure_value(const AdmissibleDrift& ad, const GridFunction& potential);

/// 1/2 int ((log F)' - g')^2 dmu~. Throws InconsistencyError unless
/// lambda_V - pressure_value equals it within 1e-8.
double pressure_gap(const AdmissibleDrift& ad, const EigenSolution& e,
                    const GridFunction& potential);

/// Quadrature only, no consistency assertion.
double pressure_gap_quadrature(const AdmissibleDrift& ad, const EigenSolution& e);

struct EntropyReport {
    double H;
    double mean_V;
    double pressure_value;
    double gap;
    double lambda_ref;
};

EntropyReport entropy_report(const AdmissibleDrift& ad, const EigenSolution& e,
                             const GridFunction& potential);

struct TraceEntry {
    int iter;
    double value;
    double grad_norm;
};

struct MaximizeResult {
    HarmonicSpec g_opt;
    double value;
    std::vector<TraceEntry> trace;
};

/// Gradient ascent of pressure_value over the cosine/sine coefficients of g
/// for k = 1..K (central differences, step 1e-6). A step that lowers the
/// value halves the learning rate, up to 30 times. Throws NonConvergence
/// if the final 10 trace values spread by more than 1e-6 while the
/// gradient norm is still at least 1e-6.
MaximizeResult maximize_pressure(const GridFunction& potential, int K, double lr, int iters);

}  // namespace fkt
