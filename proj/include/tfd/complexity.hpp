// complexity.hpp — Nielsen complexity of the time-evolved TFD state, its rate,
// the closed-form limits, and the Lloyd bound.

#pragma once

#include "tfd/covariance.hpp"
#include "tfd/model.hpp"

#include <cstddef>
#include <optional>

namespace tfd {

// Everything needed to evaluate C(t). mass only enters the explicit covariance
// blocks; the sector values A_{i+-} do not depend on it.
struct EvaluationContext {
    ModeFrequencies freqs;
    ReferenceFrequencies refs;
    TfdCoefficients alphas;
    double hbar = 1.0;
    double mass = 1.0;
};

void validate(const EvaluationContext& ctx);

EvaluationContext make_context(const OscillatorParams& params, const ThermalParams& thermal,
                               const ReferenceFrequencies& refs = {});

EvaluationContext make_context(const ModeFrequencies& freqs, const ThermalParams& thermal,
                               const ReferenceFrequencies& refs = {}, double hbar = 1.0,
                               double mass = 1.0);

struct ComplexitySample {
    double t = 0.0;
    double c = 0.0;
    double cdot = 0.0;
};

// C(t) = 1/2 sqrt(sum_s ln^2 e_s) = sqrt(1/2 sum_sectors arccosh^2 A_{i+-}).
double complexity_at(const EvaluationContext& ctx, double t);

// dC/dt = (1/2C) sum_sectors arccosh(A) dA/dt / sqrt(A^2 - 1).
double complexity_rate_at(const EvaluationContext& ctx, double t);

// Both of the above from one pass over the sectors.
ComplexitySample evaluate(const EvaluationContext& ctx, double t);

// Matched reference (omegaR_i = omega_i): C = 2 sqrt(alpha1^2 + alpha2^2), time independent.
double complexity_equal_ref(const TfdCoefficients& alphas);

// beta -> infinity: sqrt(ln^2(wR1/w1) + ln^2(wR2/w2)).
double complexity_zero_temp_limit(const ModeFrequencies& freqs, const ReferenceFrequencies& refs);

// Leading high-temperature form, valid for beta hbar omega_i << 1 (not checked).
double complexity_high_temp_approx(const EvaluationContext& ctx, double t, double beta);

// beta -> 0 limit of the rate. The approach is logarithmic in beta: the
// relative correction at finite beta is O(1 / ln(1/(beta hbar omega))).
double rate_high_temp_limit(const ModeFrequencies& freqs, const ReferenceFrequencies& refs, double t);

// Right-hand side of |dC/dt| <= 2U/(pi hbar).
double lloyd_rhs(double internal_energy, double hbar = 1.0);

// Common period of the two sector families when omega1/omega2 is a rational
// p/q (q <= max_denominator) within rel_tol; the complexity is then exactly
// periodic with period q pi / omega2.
std::optional<double> fundamental_period(const ModeFrequencies& freqs, double rel_tol = 1e-9,
                                         int max_denominator = 64);

// Maximum of |dC/dt| over [t0, t1]: uniform grid of `samples` points, then a
// golden-section refinement around the grid maximum to 1e-10 in t.
double max_abs_rate(const EvaluationContext& ctx, double t0, double t1, std::size_t samples);

// Same search applied to |rate_high_temp_limit|.
double max_abs_high_temp_rate(const ModeFrequencies& freqs, const ReferenceFrequencies& refs,
                              double t0, double t1, std::size_t samples);

// Default search window for the maxima above: the fundamental period when it
// exists, otherwise pi / omega2.
double default_rate_window(const ModeFrequencies& freqs);

} // namespace tfd
