// model.hpp — charged oscillator in a magnetic field: normal modes, spectrum,
// thermodynamics and thermofield-double squeezing coefficients.
//
// Units: hbar, k_B and the mass default to 1; every function still takes them
// explicitly so that dimensional checks remain possible.

#pragma once

namespace tfd {

struct OscillatorParams {
    double mass = 1.0;
    double hbar = 1.0;
    double omega0 = 0.0;  // trap frequency
    double omegaC = 0.0;  // cyclotron frequency |eB|/m

    // (omega0, e, B, m) parameterization; converts through cyclotron_frequency.
    static OscillatorParams from_field(double omega0, double charge, double field,
                                       double mass = 1.0, double hbar = 1.0);

    // Inverse of normal_mode_frequencies: omega0 = sqrt(w1 w2), omegaC = w1 - w2.
    static OscillatorParams from_modes(double omega1, double omega2,
                                       double mass = 1.0, double hbar = 1.0);
};

// Throws ParameterError naming the first violated invariant.
void validate(const OscillatorParams& params);

struct ModeFrequencies {
    double omega1 = 0.0;  // omega1 >= omega2, equal only without field
    double omega2 = 0.0;
};

struct ThermalParams {
    double beta = 1.0;  // 1/T with k_B = 1
};

void validate(const ThermalParams& thermal);

struct TfdCoefficients {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

double cyclotron_frequency(double charge, double field, double mass);

// omega_{1,2} = (sqrt(4 omega0^2 + omegaC^2) +- omegaC) / 2. omega2 is formed as
// omega0^2 / omega1 so that it keeps full relative precision when omegaC >> omega0.
ModeFrequencies normal_mode_frequencies(const OscillatorParams& params);

// E_{n,l} with n >= 0 and l >= -n.
double energy_nl(int n, int l, const ModeFrequencies& freqs, double hbar = 1.0);

// E_{n,k} = hbar w1 (n + 1/2) + hbar w2 (k + 1/2), the spectrum in the shifted k = n + l labels.
double energy_nk(int n, int k, const ModeFrequencies& freqs, double hbar = 1.0);

double ground_state_energy(const ModeFrequencies& freqs, double hbar = 1.0);

double partition_function(const ModeFrequencies& freqs, const ThermalParams& thermal,
                          double hbar = 1.0);

// U = -d ln Z / d beta = (hbar/2) sum_i w_i coth(beta hbar w_i / 2).
double internal_energy(const ModeFrequencies& freqs, const ThermalParams& thermal,
                       double hbar = 1.0);

// tanh(alpha) = exp(-beta hbar omega / 2) for a single mode.
double tfd_alpha(double omega, double beta, double hbar = 1.0);

TfdCoefficients tfd_alphas(const ModeFrequencies& freqs, const ThermalParams& thermal,
                           double hbar = 1.0);

} // namespace tfd
