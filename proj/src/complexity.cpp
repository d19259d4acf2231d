// complexity.cpp — complexity, rate, limits and Lloyd bound

#include "tfd/complexity.hpp"

#include "golden.hpp"
#include "tfd/errors.hpp"
#include "tfd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace tfd {

namespace {

void require_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(what) + " must be positive and finite");
    }
}

void validate(const ModeFrequencies& freqs)
{
    require_positive(freqs.omega1, "omega1");
    require_positive(freqs.omega2, "omega2");
}

// (wR^2 + w^2) +- (wR^2 - w^2) cos(wt), written as wR^2 (1 +- c) + w^2 (1 -+ c)
// with 1 + c = 2cos^2(wt/2), 1 - c = 2sin^2(wt/2) so both terms stay nonnegative.
struct HalfAngleTerms {
    double plus, minus;  // the +- combinations
    double sin_2phase;   // sin(2 w t)
};

HalfAngleTerms half_angle_terms(double omega, double omegaR, double t)
{
    const double half_phase = 0.5 * omega * t;
    const double sh = std::sin(half_phase);
    const double ch = std::cos(half_phase);
    const double p = 2.0 * ch * ch;
    const double q = 2.0 * sh * sh;
    const double wr2 = omegaR * omegaR;
    const double w2 = omega * omega;
    const double sin_phase = 2.0 * sh * ch;
    const double cos_phase = ch * ch - sh * sh;
    return {wr2 * p + w2 * q, wr2 * q + w2 * p, 2.0 * sin_phase * cos_phase};
}

template <class F>
double max_abs_on_grid(F&& f_abs, std::span<const double> grid_abs, double t0, double t1,
                       double dt)
{
    const auto it = std::max_element(grid_abs.begin(), grid_abs.end());
    const std::size_t k = static_cast<std::size_t>(it - grid_abs.begin());
    const double lo = std::max(t0, t0 + (static_cast<double>(k) - 1.0) * dt);
    const double hi = std::min(t1, t0 + (static_cast<double>(k) + 1.0) * dt);
    const auto [x, fx] = detail::golden_maximize(f_abs, lo, hi, 1e-10);
    (void)x;
    return std::max(*it, fx);
}

std::vector<double> uniform_times(double t0, double t1, std::size_t samples)
{
    if (!(t1 > t0)) throw ParameterError("time window requires t1 > t0");
    if (samples < 2) throw ParameterError("time window requires at least 2 samples");
    std::vector<double> t(samples);
    const double dt = (t1 - t0) / static_cast<double>(samples - 1);
    for (std::size_t j = 0; j < samples; ++j) t[j] = t0 + static_cast<double>(j) * dt;
    t.back() = t1;
    return t;
}

} // namespace

void validate(const EvaluationContext& ctx)
{
    validate(ctx.freqs);
    validate(ctx.refs);
    if (!(ctx.alphas.alpha1 >= 0.0) || !(ctx.alphas.alpha2 >= 0.0) ||
        !std::isfinite(ctx.alphas.alpha1) || !std::isfinite(ctx.alphas.alpha2)) {
        throw ParameterError("squeezing parameters must be nonnegative and finite");
    }
    require_positive(ctx.hbar, "hbar");
    require_positive(ctx.mass, "mass");
}

EvaluationContext make_context(const OscillatorParams& params, const ThermalParams& thermal,
                               const ReferenceFrequencies& refs)
{
    return make_context(normal_mode_frequencies(params), thermal, refs, params.hbar, params.mass);
}

EvaluationContext make_context(const ModeFrequencies& freqs, const ThermalParams& thermal,
                               const ReferenceFrequencies& refs, double hbar, double mass)
{
    EvaluationContext ctx{freqs, refs, tfd_alphas(freqs, thermal, hbar), hbar, mass};
    validate(ctx);
    return ctx;
}

ComplexitySample evaluate(const EvaluationContext& ctx, double t)
{
    return kernels::evaluate_sample(kernels::series_coefficients(ctx), t);
}

double complexity_at(const EvaluationContext& ctx, double t)
{
    return evaluate(ctx, t).c;
}

double complexity_rate_at(const EvaluationContext& ctx, double t)
{
    return evaluate(ctx, t).cdot;
}

double complexity_equal_ref(const TfdCoefficients& alphas)
{
    return 2.0 * std::hypot(alphas.alpha1, alphas.alpha2);
}

double complexity_zero_temp_limit(const ModeFrequencies& freqs, const ReferenceFrequencies& refs)
{
    validate(freqs);
    validate(refs);
    return std::hypot(std::log(refs.omegaR1 / freqs.omega1), std::log(refs.omegaR2 / freqs.omega2));
}

double complexity_high_temp_approx(const EvaluationContext& ctx, double t, double beta)
{
    validate(ctx);
    require_positive(beta, "beta");
    const double omegas[2] = {ctx.freqs.omega1, ctx.freqs.omega2};
    const double refs[2] = {ctx.refs.omegaR1, ctx.refs.omegaR2};
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        const HalfAngleTerms terms = half_angle_terms(omegas[i], refs[i], t);
        const double scale = 2.0 / (beta * ctx.hbar * refs[i] * omegas[i] * omegas[i]);
        for (double combo : {terms.plus, terms.minus}) {
            const double arg = scale * combo;
            if (!(arg > 0.0)) throw NumericError("high-temperature logarithm argument is not positive");
            const double l = std::log(arg);
            sum += l * l;
        }
    }
    return std::sqrt(0.5 * sum);
}

double rate_high_temp_limit(const ModeFrequencies& freqs, const ReferenceFrequencies& refs, double t)
{
    validate(freqs);
    validate(refs);
    const double omegas[2] = {freqs.omega1, freqs.omega2};
    const double ref_values[2] = {refs.omegaR1, refs.omegaR2};
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double w = omegas[i];
        const double diff = ref_values[i] * ref_values[i] - w * w;
        const HalfAngleTerms terms = half_angle_terms(w, ref_values[i], t);
        // (P^2 - Q^2 cos^2) = (P + Q c)(P - Q c)
        sum += w * diff * diff * terms.sin_2phase / (terms.plus * terms.minus);
    }
    return sum / (2.0 * std::numbers::sqrt2);
}

double lloyd_rhs(double internal_energy, double hbar)
{
    require_positive(internal_energy, "internal energy");
    require_positive(hbar, "hbar");
    return 2.0 * internal_energy / (std::numbers::pi * hbar);
}

std::optional<double> fundamental_period(const ModeFrequencies& freqs, double rel_tol,
                                         int max_denominator)
{
    if (!(freqs.omega1 > 0.0) || !(freqs.omega2 > 0.0)) return std::nullopt;
    const double ratio = freqs.omega1 / freqs.omega2;
    for (int q = 1; q <= max_denominator; ++q) {
        const double p = std::round(ratio * q);
        if (p >= 1.0 && std::abs(p / q - ratio) <= rel_tol * ratio) {
            return q * std::numbers::pi / freqs.omega2;
        }
    }
    return std::nullopt;
}

double default_rate_window(const ModeFrequencies& freqs)
{
    validate(freqs);
    return fundamental_period(freqs).value_or(std::numbers::pi / freqs.omega2);
}

double max_abs_rate(const EvaluationContext& ctx, double t0, double t1, std::size_t samples)
{
    const std::vector<double> times = uniform_times(t0, t1, samples);
    std::vector<double> c(samples), cdot(samples);
    const kernels::SeriesCoefficients coeffs = kernels::series_coefficients(ctx);
    kernels::evaluate_series(coeffs, times, c, cdot);
    for (double& r : cdot) r = std::abs(r);
    const double dt = (t1 - t0) / static_cast<double>(samples - 1);
    auto f = [&](double t) { return std::abs(kernels::evaluate_sample(coeffs, t).cdot); };
    return max_abs_on_grid(f, cdot, t0, t1, dt);
}

double max_abs_high_temp_rate(const ModeFrequencies& freqs, const ReferenceFrequencies& refs,
                              double t0, double t1, std::size_t samples)
{
    const std::vector<double> times = uniform_times(t0, t1, samples);
    auto f = [&](double t) { return std::abs(rate_high_temp_limit(freqs, refs, t)); };
    std::vector<double> values(samples);
    std::transform(times.begin(), times.end(), values.begin(), f);
    const double dt = (t1 - t0) / static_cast<double>(samples - 1);
    return max_abs_on_grid(f, values, t0, t1, dt);
}

} // namespace tfd
