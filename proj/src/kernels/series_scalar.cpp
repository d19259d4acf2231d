// series_scalar.cpp — scalar reference kernel

#include "tfd/kernels.hpp"

#include "tfd/errors.hpp"

#include <cmath>

namespace tfd::kernels {

SeriesCoefficients series_coefficients(const EvaluationContext& ctx)
{
    validate(ctx);
    return {{mode_coefficients(ctx.alphas.alpha1, ctx.freqs.omega1, ctx.refs.omegaR1),
             mode_coefficients(ctx.alphas.alpha2, ctx.freqs.omega2, ctx.refs.omegaR2)}};
}

ComplexitySample evaluate_sample(const SeriesCoefficients& coeffs, double t)
{
    double sum_sq = 0.0;
    double rate_num = 0.0;
    for (const ModeCoefficients& mode : coeffs.modes) {
        const SectorPair pair = sector_pair(mode, t);
        const double values[2] = {pair.a_plus, pair.a_minus};
        const double rates[2] = {pair.a_plus_dot, pair.a_minus_dot};
        for (int s = 0; s < 2; ++s) {
            const double d = clamp_sector_value(values[s]) - 1.0;
            const double ac = arccosh_from_excess(d);
            sum_sq += ac * ac;
            rate_num += arccosh_ratio(d, ac) * rates[s];
        }
    }
    ComplexitySample out{t, std::sqrt(0.5 * sum_sq), 0.0};
    if (out.c > 0.0) {
        out.cdot = rate_num / (2.0 * out.c);
    } else if (rate_num != 0.0) {
        throw SingularRateError("complexity vanishes while its rate numerator does not");
    }
    return out;
}

namespace detail {

void series_scalar(const SeriesCoefficients& coeffs, std::span<const double> times,
                   std::span<double> c, std::span<double> cdot)
{
    for (std::size_t j = 0; j < times.size(); ++j) {
        const ComplexitySample s = evaluate_sample(coeffs, times[j]);
        c[j] = s.c;
        cdot[j] = s.cdot;
    }
}

} // namespace detail

} // namespace tfd::kernels
