// kernels.hpp — batched evaluation of (C, dC/dt) over many time points.
//
// The scalar variant is the reference: it calls the same per-sample routine as
// complexity_at. The AVX2 variant evaluates four time points per iteration with
// glibc's libmvec for sin/cos/log1p and is selected at runtime when the CPU
// supports AVX2 and FMA. TFD_KERNEL=scalar in the environment forces the
// reference path.

#pragma once

#include "tfd/complexity.hpp"
#include "tfd/covariance.hpp"

#include <array>
#include <cmath>
#include <span>
#include <string_view>

namespace tfd::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend);
bool backend_available(Backend backend);
Backend default_backend();

struct SeriesCoefficients {
    std::array<ModeCoefficients, 2> modes;
};

SeriesCoefficients series_coefficients(const EvaluationContext& ctx);

// Below this excess A - 1 the ratio arccosh(A)/sqrt(A^2-1) uses its series.
inline constexpr double kRatioSeriesThreshold = 1e-6;

// arccosh(1 + d) without the cancellation of ln(A + sqrt(A^2 - 1)) near A = 1.
inline double arccosh_from_excess(double d)
{
    return std::log1p(d + std::sqrt(d * (d + 2.0)));
}

// arccosh(1 + d) / sqrt(d (d + 2)); tends to 1 as d -> 0.
inline double arccosh_ratio(double d, double arccosh_value)
{
    if (d < kRatioSeriesThreshold) return 1.0 - d / 3.0;
    return arccosh_value / std::sqrt(d * (d + 2.0));
}

// Scalar reference for a single time point.
ComplexitySample evaluate_sample(const SeriesCoefficients& coeffs, double t);

// c[j], cdot[j] at times[j]. All three spans must have the same length.
void evaluate_series(const SeriesCoefficients& coeffs, std::span<const double> times,
                     std::span<double> c, std::span<double> cdot, Backend backend);

void evaluate_series(const SeriesCoefficients& coeffs, std::span<const double> times,
                     std::span<double> c, std::span<double> cdot);

namespace detail {
void series_scalar(const SeriesCoefficients& coeffs, std::span<const double> times,
                   std::span<double> c, std::span<double> cdot);
#if defined(TFD_HAVE_AVX2_KERNEL)
void series_avx2(const SeriesCoefficients& coeffs, std::span<const double> times,
                 std::span<double> c, std::span<double> cdot);
#endif
} // namespace detail

} // namespace tfd::kernels
