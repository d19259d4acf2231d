// covariance.hpp — 2x2 sector algebra of the thermofield-double covariance matrix.
//
// In the light-cone basis (X_{i+-}, P_{i+-}) the vacuum, target and relative
// covariance matrices are block diagonal with four independent 2x2 sectors
// labelled (mode i, sign +-). Only the sectors are ever materialized here; the
// full 8x8 objects live in the oracle.

#pragma once

#include "tfd/model.hpp"

#include <array>

namespace tfd {

// Row-major real 2x2 matrix.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0;
    double m10 = 0.0, m11 = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    constexpr double trace() const { return m00 + m11; }
    constexpr double det() const { return m00 * m11 - m01 * m10; }
    constexpr Mat2 transpose() const { return {m00, m10, m01, m11}; }
};

constexpr Mat2 operator*(const Mat2& a, const Mat2& b)
{
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

constexpr Mat2 operator+(const Mat2& a, const Mat2& b)
{
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

constexpr Mat2 operator*(double s, const Mat2& a)
{
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

// Symplectic form of every sector; preserved by all squeezers used here.
inline constexpr Mat2 kSymplecticForm{0.0, 1.0, -1.0, 0.0};

// Symmetric covariance block [[xx, xp], [xp, pp]].
struct CovarianceBlock {
    double xx = 1.0;
    double xp = 0.0;
    double pp = 1.0;

    constexpr Mat2 matrix() const { return {xx, xp, xp, pp}; }
    constexpr double det() const { return xx * pp - xp * xp; }
};

struct ReferenceFrequencies {
    double omegaR1 = 1.0;
    double omegaR2 = 1.0;
};

void validate(const ReferenceFrequencies& refs);

enum class Sign : int { plus = 1, minus = -1 };

constexpr double sign_value(Sign s) { return static_cast<int>(s); }

struct SectorLabel {
    int mode;  // 1 or 2
    Sign sign;
};

inline constexpr std::array<SectorLabel, 4> kSectors{
    SectorLabel{1, Sign::plus}, SectorLabel{1, Sign::minus},
    SectorLabel{2, Sign::plus}, SectorLabel{2, Sign::minus}};

// The four A_{i+-} values at one instant; every eigenvalue follows from them.
struct RelativeSpectrum {
    double a1p = 1.0, a1m = 1.0, a2p = 1.0, a2m = 1.0;

    constexpr std::array<double, 4> values() const { return {a1p, a1m, a2p, a2m}; }
};

struct EigenPair {
    double e_minus;  // in (0, 1]
    double e_plus;   // >= 1
};

// Values in [1 - kClampTolerance, 1) are raised to 1; anything lower is an error.
inline constexpr double kClampTolerance = 1e-12;

CovarianceBlock vacuum_block(double omega, double mass);

// K_i(t) = [[cos wt, -sin wt/(m w)], [-m w sin wt, -cos wt]]; K^2 = 1.
Mat2 k_generator_matrix(double omega, double mass, double t);

// exp(sign * alpha * K_i(t)) = cosh(alpha) 1 + sign sinh(alpha) K_i(t).
Mat2 squeezer_matrix(double alpha, Sign sign, double omega, double mass, double t);

// Closed form of U G_0 U^T.
CovarianceBlock target_block(double alpha, Sign sign, double omega, double mass, double t);

// target * g_R with g_R = diag(m omegaR, 1/(m omegaR)) the inverse reference block.
Mat2 relative_block(const CovarianceBlock& target, double omegaR, double mass);

// Per-mode constants of A_{i+-}(t), shared by the scalar path and the SIMD kernels.
//
// With p = 1 + cos(wt) = 2cos^2(wt/2), q = 1 - cos(wt) = 2sin^2(wt/2):
//   A_{i+} = kappa (E + S p) + lambda (E + S q)
//   A_{i-} = kappa (E + S q) + lambda (E + S p)
//   dA_{i+-}/dt = -+ rate_scale sin(wt)
// where E = exp(-2 alpha), S = sinh(2 alpha), kappa = wR/(2w), lambda = w/(2wR).
// Every term is nonnegative, so no cancellation occurs even when cosh(2 alpha)
// and sinh(2 alpha) are both huge.
struct ModeCoefficients {
    double half_omega = 0.0;
    double exp_m2alpha = 1.0;
    double sinh_2alpha = 0.0;
    double kappa = 0.5;
    double lambda = 0.5;
    double rate_scale = 0.0;
};

ModeCoefficients mode_coefficients(double alpha, double omega, double omegaR);

struct SectorPair {
    double a_plus, a_minus;
    double a_plus_dot, a_minus_dot;
};

// Both signs of one mode at time t, unclamped.
SectorPair sector_pair(const ModeCoefficients& mode, double t);

// A value clamped to >= 1 per kClampTolerance; throws NumericError below that.
double clamp_sector_value(double a);

// A_{i+-}(t) = [(wR^2+w^2)cosh 2a +- (wR^2-w^2) sinh 2a cos wt] / (2 wR w), clamped to >= 1.
double sector_A(double alpha, double omega, double omegaR, Sign sign, double t);

RelativeSpectrum relative_spectrum(const TfdCoefficients& alphas, const ModeFrequencies& freqs,
                                   const ReferenceFrequencies& refs, double t);

// e_+- = a +- sqrt(a^2 - 1), returned as (smaller, larger).
EigenPair relative_eigenvalues(double a);

} // namespace tfd
