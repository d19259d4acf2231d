// model.cpp — normal modes, spectrum, thermodynamics and TFD coefficients

#include "tfd/model.hpp"

#include "tfd/errors.hpp"

#include <cmath>
#include <string>

namespace tfd {

namespace {

void require_positive_mode(double omega, const char* what)
{
    if (!(omega > 0.0)) {
        throw DivergenceError(std::string(what) +
                              " must be positive: the thermal geometric series diverges at zero frequency");
    }
}

void require_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(what) + " must be positive and finite");
    }
}

} // namespace

OscillatorParams OscillatorParams::from_field(double omega0, double charge, double field,
                                              double mass, double hbar)
{
    OscillatorParams p{mass, hbar, omega0, cyclotron_frequency(charge, field, mass)};
    validate(p);
    return p;
}

OscillatorParams OscillatorParams::from_modes(double omega1, double omega2, double mass, double hbar)
{
    if (!(omega1 >= omega2) || !(omega2 >= 0.0)) {
        throw ParameterError("mode frequencies require omega1 >= omega2 >= 0");
    }
    OscillatorParams p{mass, hbar, std::sqrt(omega1 * omega2), omega1 - omega2};
    validate(p);
    return p;
}

void validate(const OscillatorParams& params)
{
    require_positive(params.mass, "mass");
    require_positive(params.hbar, "hbar");
    if (!(params.omega0 >= 0.0) || !std::isfinite(params.omega0)) {
        throw ParameterError("omega0 must be nonnegative and finite");
    }
    if (!(params.omegaC >= 0.0) || !std::isfinite(params.omegaC)) {
        throw ParameterError("omegaC must be nonnegative and finite");
    }
    if (params.omega0 == 0.0 && params.omegaC == 0.0) {
        throw ParameterError("at least one of omega0, omegaC must be positive (both mode frequencies vanish)");
    }
}

void validate(const ThermalParams& thermal)
{
    require_positive(thermal.beta, "beta");
}

double cyclotron_frequency(double charge, double field, double mass)
{
    require_positive(mass, "mass");
    return std::abs(charge * field) / mass;
}

ModeFrequencies normal_mode_frequencies(const OscillatorParams& params)
{
    validate(params);
    const double w0 = params.omega0;
    const double wc = params.omegaC;
    const double root = std::hypot(2.0 * w0, wc);
    ModeFrequencies f;
    f.omega1 = 0.5 * (root + wc);
    f.omega2 = (wc == 0.0) ? f.omega1 : (w0 / f.omega1) * w0;
    return f;
}

double energy_nl(int n, int l, const ModeFrequencies& freqs, double hbar)
{
    if (n < 0) throw DomainError("principal quantum number n must be >= 0");
    if (l < -n) throw DomainError("magnetic quantum number must satisfy l >= -n");
    return energy_nk(n, n + l, freqs, hbar);
}

double energy_nk(int n, int k, const ModeFrequencies& freqs, double hbar)
{
    if (n < 0 || k < 0) throw DomainError("Fock indices n, k must be >= 0");
    return hbar * freqs.omega1 * (n + 0.5) + hbar * freqs.omega2 * (k + 0.5);
}

double ground_state_energy(const ModeFrequencies& freqs, double hbar)
{
    return 0.5 * hbar * (freqs.omega1 + freqs.omega2);
}

double partition_function(const ModeFrequencies& freqs, const ThermalParams& thermal, double hbar)
{
    validate(thermal);
    require_positive_mode(freqs.omega1, "omega1");
    require_positive_mode(freqs.omega2, "omega2");
    const double x1 = thermal.beta * hbar * freqs.omega1;
    const double x2 = thermal.beta * hbar * freqs.omega2;
    // 1 - e^{-x} = -expm1(-x)
    return std::exp(-0.5 * (x1 + x2)) / (std::expm1(-x1) * std::expm1(-x2));
}

double internal_energy(const ModeFrequencies& freqs, const ThermalParams& thermal, double hbar)
{
    validate(thermal);
    require_positive_mode(freqs.omega1, "omega1");
    require_positive_mode(freqs.omega2, "omega2");
    auto mode = [&](double w) { return w / std::tanh(0.5 * thermal.beta * hbar * w); };
    return 0.5 * hbar * (mode(freqs.omega1) + mode(freqs.omega2));
}

double tfd_alpha(double omega, double beta, double hbar)
{
    validate(ThermalParams{beta});
    require_positive_mode(omega, "mode frequency");
    const double y = 0.5 * beta * hbar * omega;
    const double x = std::exp(-y);        // tanh(alpha)
    const double gap = -std::expm1(-y);   // 1 - x without cancellation
    if (!(gap > 1e-15)) {
        throw DivergenceError("arctanh argument within 1e-15 of 1: squeezing diverges (beta*hbar*omega too small)");
    }
    // arctanh(x) = 1/2 ln((1+x)/(1-x)) = 1/2 log1p(2x/(1-x))
    return 0.5 * std::log1p(2.0 * x / gap);
}

TfdCoefficients tfd_alphas(const ModeFrequencies& freqs, const ThermalParams& thermal, double hbar)
{
    return {tfd_alpha(freqs.omega1, thermal.beta, hbar), tfd_alpha(freqs.omega2, thermal.beta, hbar)};
}

} // namespace tfd
