// covariance.cpp — vacuum, target and relative sector blocks

#include "tfd/covariance.hpp"

#include "tfd/errors.hpp"

#include <cmath>
#include <string>

namespace tfd {

namespace {

void require_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(what) + " must be positive and finite");
    }
}

void require_nonnegative(double value, const char* what)
{
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(what) + " must be nonnegative and finite");
    }
}

} // namespace

void validate(const ReferenceFrequencies& refs)
{
    require_positive(refs.omegaR1, "omegaR1");
    require_positive(refs.omegaR2, "omegaR2");
}

CovarianceBlock vacuum_block(double omega, double mass)
{
    require_positive(omega, "omega");
    require_positive(mass, "mass");
    return {1.0 / (mass * omega), 0.0, mass * omega};
}

Mat2 k_generator_matrix(double omega, double mass, double t)
{
    require_positive(omega, "omega");
    require_positive(mass, "mass");
    const double mw = mass * omega;
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    return {c, -s / mw, -mw * s, -c};
}

Mat2 squeezer_matrix(double alpha, Sign sign, double omega, double mass, double t)
{
    require_nonnegative(alpha, "alpha");
    const Mat2 k = k_generator_matrix(omega, mass, t);
    return std::cosh(alpha) * Mat2::identity() + (sign_value(sign) * std::sinh(alpha)) * k;
}

CovarianceBlock target_block(double alpha, Sign sign, double omega, double mass, double t)
{
    require_nonnegative(alpha, "alpha");
    require_positive(omega, "omega");
    require_positive(mass, "mass");
    const double s = sign_value(sign);
    const double mw = mass * omega;
    const double ch = std::cosh(2.0 * alpha);
    const double sh = std::sinh(2.0 * alpha);
    const double c = std::cos(omega * t);
    return {(ch + s * sh * c) / mw, -s * sh * std::sin(omega * t), mw * (ch - s * sh * c)};
}

Mat2 relative_block(const CovarianceBlock& target, double omegaR, double mass)
{
    require_positive(omegaR, "omegaR");
    require_positive(mass, "mass");
    const double mwr = mass * omegaR;
    const Mat2 g_ref_inverse{mwr, 0.0, 0.0, 1.0 / mwr};
    return target.matrix() * g_ref_inverse;
}

ModeCoefficients mode_coefficients(double alpha, double omega, double omegaR)
{
    require_nonnegative(alpha, "alpha");
    require_positive(omega, "omega");
    require_positive(omegaR, "omegaR");
    ModeCoefficients m;
    m.half_omega = 0.5 * omega;
    m.exp_m2alpha = std::exp(-2.0 * alpha);
    m.sinh_2alpha = std::sinh(2.0 * alpha);
    m.kappa = omegaR / (2.0 * omega);
    m.lambda = omega / (2.0 * omegaR);
    m.rate_scale = (m.kappa - m.lambda) * m.sinh_2alpha * omega;
    return m;
}

SectorPair sector_pair(const ModeCoefficients& mode, double t)
{
    // Matched reference or no squeezing: p + q = 2 drops out exactly instead of to rounding.
    if (mode.rate_scale == 0.0) {
        const double a = (mode.kappa + mode.lambda) * (mode.exp_m2alpha + mode.sinh_2alpha);
        return {a, a, 0.0, 0.0};
    }
    const double half_phase = mode.half_omega * t;
    const double sh = std::sin(half_phase);
    const double ch = std::cos(half_phase);
    const double p = 2.0 * ch * ch;  // 1 + cos(wt)
    const double q = 2.0 * sh * sh;  // 1 - cos(wt)
    const double sin_phase = 2.0 * sh * ch;
    const double ep = mode.exp_m2alpha + mode.sinh_2alpha * p;
    const double eq = mode.exp_m2alpha + mode.sinh_2alpha * q;
    const double a_dot = mode.rate_scale * sin_phase;
    return {mode.kappa * ep + mode.lambda * eq, mode.kappa * eq + mode.lambda * ep, -a_dot, a_dot};
}

double clamp_sector_value(double a)
{
    if (a >= 1.0) return a;
    if (a >= 1.0 - kClampTolerance) return 1.0;
    throw NumericError("relative covariance sector value A = " + std::to_string(a) +
                       " fell below 1 beyond the clamp tolerance");
}

double sector_A(double alpha, double omega, double omegaR, Sign sign, double t)
{
    const SectorPair pair = sector_pair(mode_coefficients(alpha, omega, omegaR), t);
    return clamp_sector_value(sign == Sign::plus ? pair.a_plus : pair.a_minus);
}

RelativeSpectrum relative_spectrum(const TfdCoefficients& alphas, const ModeFrequencies& freqs,
                                   const ReferenceFrequencies& refs, double t)
{
    validate(refs);
    const SectorPair one = sector_pair(mode_coefficients(alphas.alpha1, freqs.omega1, refs.omegaR1), t);
    const SectorPair two = sector_pair(mode_coefficients(alphas.alpha2, freqs.omega2, refs.omegaR2), t);
    return {clamp_sector_value(one.a_plus), clamp_sector_value(one.a_minus),
            clamp_sector_value(two.a_plus), clamp_sector_value(two.a_minus)};
}

EigenPair relative_eigenvalues(double a)
{
    a = clamp_sector_value(a);
    const double e_plus = a + std::sqrt((a - 1.0) * (a + 1.0));
    return {1.0 / e_plus, e_plus};
}

} // namespace tfd
