// analysis.hpp — sampled trajectories, period and beat estimation, parameter
// sweeps and Lloyd-bound reporting.

#pragma once

#include "tfd/complexity.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tfd {

// Uniformly sampled real signal.
struct TimeSeries {
    std::vector<double> t;
    std::vector<double> values;

    double spacing() const { return (t.back() - t.front()) / static_cast<double>(t.size() - 1); }
};

// Throws ParameterError unless the series has >= 2 points, matching lengths and
// constant spacing (to 1e-12 relative, with an absolute floor for large offsets).
void validate(const TimeSeries& series);

std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

// (t, C, dC/dt) on the uniform grid t0 + j (t1 - t0)/(n - 1).
std::vector<ComplexitySample> sample_trajectory(const EvaluationContext& ctx, double t0, double t1,
                                                std::size_t n);

TimeSeries sample_series(const EvaluationContext& ctx, double t0, double t1, std::size_t n);

struct PeriodEstimate {
    double period = 0.0;
    double confidence = 0.0;  // in [0, 1]
};

// Fundamental period of the signal: the smallest lag whose normalized squared
// difference d(lag) = <(x(t+lag) - x(t))^2> / (2 var x) lies within
// kRecurrenceTolerance of the best recurrence found over lags up to 2/3 of the
// span, refined by a parabola through the neighbouring lags. Confidence is
// 1 - d(period): 1 for an exactly periodic signal.
// Throws InsufficientDataError for fewer than three local maxima, a constant
// series, or no recurrence inside the searchable lag range.
PeriodEstimate estimate_period(const TimeSeries& series);

inline constexpr double kRecurrenceTolerance = 0.01;

// Beat (amplitude-modulation) period. The carrier scale is the median gap
// between successive local maxima; upper and lower envelopes are running
// max/min over two carrier gaps, and the beat period is the fundamental period
// of the amplitude envelope (upper - lower). Confidence is (1 - rho)/2 scaled
// by the envelope's recurrence quality, where rho correlates the upper and
// lower envelopes: beating moves them in antiphase, a slow additive drift moves
// them together. Throws InsufficientDataError when the amplitude envelope
// varies by less than kMinEnvelopeModulation of its mean.
PeriodEstimate estimate_beat_period(const TimeSeries& series);

inline constexpr double kMinEnvelopeModulation = 0.01;

struct GridPoint {
    double beta = 1.0;
    double omega0 = 0.0;
    double omegaC = 0.0;
};

struct SweepOptions {
    ReferenceFrequencies refs{};
    double hbar = 1.0;
    double mass = 1.0;
    // 0 selects 512 samples per shortest carrier period pi/omega1 over the window.
    std::size_t window_samples = 0;
    // Used when omega1/omega2 is not rational; pi/omega2 otherwise.
    std::optional<double> window;
    unsigned workers = 1;
};

struct SweepPoint {
    double beta = 0.0;
    double omega0 = 0.0;
    double omegaC = 0.0;
    double omegaR1 = 0.0;
    double omegaR2 = 0.0;
    double cMax = 0.0;
    double rateMax = 0.0;
    double internalEnergy = 0.0;
    double lloydRhs = 0.0;
    bool lloydSatisfied = false;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

inline constexpr double kLloydSlack = 1e-12;

// One row per grid entry in input order. Per-point failures are recorded in
// the row's error field and do not abort the sweep. Rows are bit-identical for
// any worker count.
std::vector<SweepPoint> sweep(std::span<const GridPoint> grid, const SweepOptions& options);

struct LloydAsymptotes {
    double omega0 = 0.0;
    double omegaC = 0.0;
    double omegaR1 = 0.0;
    double omegaR2 = 0.0;
    double groundEnergy = 0.0;           // E_00, the beta -> infinity limit of U
    double groundLloydRhs = 0.0;         // 2 E_00 / (pi hbar)
    double highTempRatePlateau = 0.0;    // max_t |beta -> 0 rate|
};

struct LloydReport {
    std::size_t satisfied = 0;
    std::size_t violated = 0;
    std::size_t failed = 0;
    double tightestMargin = 0.0;  // min(lloydRhs - rateMax) over successful rows
    std::vector<LloydAsymptotes> asymptotes;  // one per distinct frequency set, first-seen order
};

LloydReport lloyd_report(std::span<const SweepPoint> points, double hbar = 1.0);

} // namespace tfd
