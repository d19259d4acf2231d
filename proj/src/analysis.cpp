// analysis.cpp — sampling, period/beat estimation, sweeps, Lloyd report

#include "tfd/analysis.hpp"

#include "golden.hpp"
#include "tfd/errors.hpp"
#include "tfd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

namespace tfd {

namespace {

std::vector<std::size_t> local_maxima(std::span<const double> x)
{
    // Strictly above the left neighbour, not below the right one, and the
    // plateau (if any) must end in a descent.
    std::vector<std::size_t> peaks;
    const std::size_t n = x.size();
    std::size_t j = 1;
    while (j + 1 < n) {
        if (x[j] > x[j - 1]) {
            std::size_t k = j;
            while (k + 1 < n && x[k + 1] == x[j]) ++k;
            if (k + 1 < n && x[k + 1] < x[j]) peaks.push_back((j + k) / 2);
            j = k + 1;
        } else {
            ++j;
        }
    }
    return peaks;
}

// Vertex offset in [-0.5, 0.5] of the parabola through (−1, a), (0, b), (1, c).
double parabolic_offset(double a, double b, double c)
{
    const double denom = a - 2.0 * b + c;
    if (denom == 0.0) return 0.0;
    return std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
}

double median(std::vector<double> v)
{
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    return m;
}

// Median spacing of parabola-refined local maxima, in samples.
double median_peak_gap(std::span<const double> x)
{
    const std::vector<std::size_t> peaks = local_maxima(x);
    if (peaks.size() < 3) throw InsufficientDataError("fewer than three local maxima in the series");
    std::vector<double> pos(peaks.size());
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        const std::size_t k = peaks[i];
        pos[i] = static_cast<double>(k) + parabolic_offset(x[k - 1], x[k], x[k + 1]);
    }
    std::vector<double> gaps(pos.size() - 1);
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) gaps[i] = pos[i + 1] - pos[i];
    return median(std::move(gaps));
}

class DifferenceFunction {
public:
    DifferenceFunction(std::span<const double> x, double two_var) : x_(x), two_var_(two_var) {}

    double operator()(std::size_t lag) const
    {
        const std::size_t m = x_.size() - lag;
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double d = x_[j + lag] - x_[j];
            s += d * d;
        }
        return s / (static_cast<double>(m) * two_var_);
    }

private:
    std::span<const double> x_;
    double two_var_;
};

double two_variance(std::span<const double> x)
{
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return 2.0 * ss / static_cast<double>(x.size());
}

// Smallest lag (in samples) whose recurrence is within kRecurrenceTolerance of
// the best one, without sub-sample refinement. Lags 1..max_lag.
std::size_t best_recurrence_lag(const std::vector<double>& d)
{
    // d[k] for k = 0..max_lag, d[0] = 0.
    std::vector<std::size_t> minima;
    for (std::size_t k = 2; k + 1 < d.size(); ++k) {
        if (d[k] <= d[k - 1] && d[k] <= d[k + 1] && d[k] < 1.0) minima.push_back(k);
    }
    if (minima.empty()) {
        throw InsufficientDataError("no recurrence found; the series spans less than 1.5 periods");
    }
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t k : minima) dmin = std::min(dmin, d[k]);
    for (std::size_t k : minima) {
        if (d[k] <= dmin + kRecurrenceTolerance) return k;
    }
    return minima.front();
}

// Fundamental period in samples and its recurrence quality 1 − d(period).
std::pair<double, double> recurrence_period(std::span<const double> x)
{
    const double two_var = two_variance(x);
    if (!(two_var > 0.0)) throw InsufficientDataError("series is constant");
    const std::size_t n = x.size();
    const std::size_t max_lag = 2 * (n - 1) / 3;
    if (max_lag < 4) throw InsufficientDataError("series too short for period estimation");

    // Long series: locate the lag on a decimated copy, then refine at full rate.
    constexpr std::size_t kCoarseSize = 8192;
    const std::size_t stride = n > 2 * kCoarseSize ? (n + kCoarseSize - 1) / kCoarseSize : 1;

    std::size_t lo = 1;
    std::size_t hi = max_lag;
    if (stride > 1) {
        std::vector<double> coarse;
        coarse.reserve(n / stride + 1);
        for (std::size_t j = 0; j < n; j += stride) coarse.push_back(x[j]);
        const DifferenceFunction dc(coarse, two_var);
        const std::size_t coarse_max = std::min(max_lag / stride, coarse.size() - 2);
        std::vector<double> d(coarse_max + 1, 0.0);
        for (std::size_t k = 1; k <= coarse_max; ++k) d[k] = dc(k);
        const std::size_t kc = best_recurrence_lag(d);
        lo = std::max<std::size_t>(1, (kc - 1) * stride);
        hi = std::min(max_lag, (kc + 1) * stride);
    }

    const DifferenceFunction df(x, two_var);
    std::vector<double> d(hi + 2, 0.0);
    for (std::size_t k = std::max<std::size_t>(1, lo - 1); k <= std::min(hi + 1, n - 2); ++k) d[k] = df(k);

    std::size_t k;
    if (stride == 1) {
        k = best_recurrence_lag(d);
    } else {
        k = lo;
        for (std::size_t j = lo; j <= hi; ++j) {
            if (d[j] < d[k]) k = j;
        }
        k = std::clamp<std::size_t>(k, 2, std::min(hi + 1, n - 2) - 1);
    }
    const double a = d[k - 1];
    const double b = d[k];
    const double c = d[k + 1];
    const double delta = parabolic_offset(a, b, c);
    const double d_at = b - 0.25 * (a - c) * delta;
    return {static_cast<double>(k) + delta, std::clamp(1.0 - d_at, 0.0, 1.0)};
}

// Running max (sign = 1) or min (sign = -1) over a centered window of 2h + 1
// samples; entries within h of either end are left at their input value.
std::vector<double> running_extreme(std::span<const double> x, std::size_t h, double sign)
{
    std::vector<double> out(x.begin(), x.end());
    std::deque<std::size_t> q;
    const std::size_t w = 2 * h + 1;
    for (std::size_t j = 0; j < x.size(); ++j) {
        while (!q.empty() && sign * x[q.back()] <= sign * x[j]) q.pop_back();
        q.push_back(j);
        if (q.front() + w <= j) q.pop_front();
        if (j + 1 >= w) out[j - h] = x[q.front()];
    }
    return out;
}

double correlation(std::span<const double> a, std::span<const double> b)
{
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        sab += (a[j] - ma) * (b[j] - mb);
        saa += (a[j] - ma) * (a[j] - ma);
        sbb += (b[j] - mb) * (b[j] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

std::size_t auto_samples(const ModeFrequencies& freqs, double window)
{
    const double per_carrier = 512.0;
    const double carriers = window / (std::numbers::pi / freqs.omega1);
    const double n = std::ceil(per_carrier * carriers) + 1.0;
    return static_cast<std::size_t>(std::clamp(n, 1024.0, static_cast<double>(1u << 22)));
}

SweepPoint sweep_one(const GridPoint& g, const SweepOptions& opt)
{
    SweepPoint row;
    row.beta = g.beta;
    row.omega0 = g.omega0;
    row.omegaC = g.omegaC;
    row.omegaR1 = opt.refs.omegaR1;
    row.omegaR2 = opt.refs.omegaR2;
    try {
        const OscillatorParams params{opt.mass, opt.hbar, g.omega0, g.omegaC};
        const ModeFrequencies freqs = normal_mode_frequencies(params);
        const EvaluationContext ctx = make_context(freqs, ThermalParams{g.beta}, opt.refs, opt.hbar, opt.mass);

        double window = std::numbers::pi / freqs.omega2;
        if (const auto period = fundamental_period(freqs)) {
            window = *period;
        } else if (opt.window) {
            window = *opt.window;
        }
        if (!(window > 0.0) || !std::isfinite(window)) throw ParameterError("sweep window must be positive");
        const std::size_t samples = opt.window_samples ? opt.window_samples : auto_samples(freqs, window);

        const std::vector<double> times = uniform_grid(0.0, window, samples);
        std::vector<double> c(samples), cdot(samples);
        const kernels::SeriesCoefficients coeffs = kernels::series_coefficients(ctx);
        kernels::evaluate_series(coeffs, times, c, cdot);

        const double dt = window / static_cast<double>(samples - 1);
        auto refine = [&](std::span<const double> grid_values, auto&& f) {
            const auto it = std::max_element(grid_values.begin(), grid_values.end());
            const double tk = times[static_cast<std::size_t>(it - grid_values.begin())];
            const double lo = std::max(0.0, tk - dt);
            const double hi = std::min(window, tk + dt);
            return std::max(*it, detail::golden_maximize(f, lo, hi, 1e-10).second);
        };
        row.cMax = refine(c, [&](double t) { return kernels::evaluate_sample(coeffs, t).c; });
        for (double& r : cdot) r = std::abs(r);
        row.rateMax = refine(cdot, [&](double t) { return std::abs(kernels::evaluate_sample(coeffs, t).cdot); });

        row.internalEnergy = internal_energy(freqs, ThermalParams{g.beta}, opt.hbar);
        row.lloydRhs = lloyd_rhs(row.internalEnergy, opt.hbar);
        row.lloydSatisfied = row.rateMax <= row.lloydRhs + kLloydSlack;
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.cMax = row.rateMax = row.internalEnergy = row.lloydRhs = nan;
        row.lloydSatisfied = false;
        row.error = e.what();
        if (row.error.empty()) row.error = "evaluation failed";
    }
    return row;
}

} // namespace

void validate(const TimeSeries& series)
{
    const std::size_t n = series.t.size();
    if (n < 2) throw ParameterError("time series needs at least 2 points");
    if (series.values.size() != n) throw ParameterError("time series t and values lengths differ");
    const double dt = series.spacing();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("time series grid must be increasing");
    const double scale = std::max(std::abs(series.t.front()), std::abs(series.t.back()));
    const double tol = 1e-12 * dt + 4.0 * std::numeric_limits<double>::epsilon() * scale;
    for (std::size_t j = 1; j < n; ++j) {
        if (std::abs((series.t[j] - series.t[j - 1]) - dt) > tol) {
            throw ParameterError("time series spacing is not uniform");
        }
    }
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n)
{
    if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0)) {
        throw ParameterError("time window requires finite t1 > t0");
    }
    if (n < 2) throw ParameterError("time window requires at least 2 samples");
    std::vector<double> t(n);
    const double span = t1 - t0;
    const double last = static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) t[j] = t0 + static_cast<double>(j) * span / last;
    t.back() = t1;
    return t;
}

std::vector<ComplexitySample> sample_trajectory(const EvaluationContext& ctx, double t0, double t1,
                                                std::size_t n)
{
    validate(ctx);
    const std::vector<double> times = uniform_grid(t0, t1, n);
    std::vector<double> c(n), cdot(n);
    kernels::evaluate_series(kernels::series_coefficients(ctx), times, c, cdot);
    std::vector<ComplexitySample> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = {times[j], c[j], cdot[j]};
    return out;
}

TimeSeries sample_series(const EvaluationContext& ctx, double t0, double t1, std::size_t n)
{
    validate(ctx);
    TimeSeries s;
    s.t = uniform_grid(t0, t1, n);
    s.values.resize(n);
    std::vector<double> cdot(n);
    kernels::evaluate_series(kernels::series_coefficients(ctx), s.t, s.values, cdot);
    return s;
}

PeriodEstimate estimate_period(const TimeSeries& series)
{
    validate(series);
    if (local_maxima(series.values).size() < 3) {
        throw InsufficientDataError("fewer than three local maxima in the series");
    }
    const auto [lag, quality] = recurrence_period(series.values);
    return {lag * series.spacing(), quality};
}

PeriodEstimate estimate_beat_period(const TimeSeries& series)
{
    validate(series);
    const std::span<const double> x = series.values;
    const double gap = median_peak_gap(x);
    const std::size_t h = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(gap)));
    if (6 * h >= x.size()) throw InsufficientDataError("series too short to resolve an envelope");

    const std::vector<double> upper_full = running_extreme(x, h, 1.0);
    const std::vector<double> lower_full = running_extreme(x, h, -1.0);
    const std::span<const double> upper(upper_full.data() + h, x.size() - 2 * h);
    const std::span<const double> lower(lower_full.data() + h, x.size() - 2 * h);

    std::vector<double> amplitude(upper.size());
    for (std::size_t j = 0; j < upper.size(); ++j) amplitude[j] = upper[j] - lower[j];
    const auto [amin, amax] = std::minmax_element(amplitude.begin(), amplitude.end());
    const double amean = std::accumulate(amplitude.begin(), amplitude.end(), 0.0) /
                         static_cast<double>(amplitude.size());
    if (!(amean > 0.0) || (*amax - *amin) < kMinEnvelopeModulation * amean) {
        throw InsufficientDataError("envelope modulation below 1% of its mean; no beat present");
    }
    if (local_maxima(amplitude).empty()) {
        throw InsufficientDataError("no envelope maxima in the series");
    }
    const auto [lag, quality] = recurrence_period(amplitude);
    const double antiphase = 0.5 * (1.0 - correlation(upper, lower));
    return {lag * series.spacing(), std::clamp(antiphase * quality, 0.0, 1.0)};
}

std::vector<SweepPoint> sweep(std::span<const GridPoint> grid, const SweepOptions& options)
{
    if (grid.empty()) throw ParameterError("sweep grid is empty");
    validate(options.refs);
    std::vector<SweepPoint> rows(grid.size());
    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, grid.size());
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = sweep_one(grid[i], options);
        return rows;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < grid.size(); i += workers) rows[i] = sweep_one(grid[i], options);
        });
    }
    pool.clear();
    return rows;
}

LloydReport lloyd_report(std::span<const SweepPoint> points, double hbar)
{
    if (points.empty()) throw ParameterError("lloyd report needs at least one sweep point");
    if (!(hbar > 0.0)) throw ParameterError("hbar must be positive");
    LloydReport report;
    report.tightestMargin = std::numeric_limits<double>::infinity();
    for (const SweepPoint& p : points) {
        if (!p.ok()) {
            ++report.failed;
            continue;
        }
        (p.lloydSatisfied ? report.satisfied : report.violated) += 1;
        report.tightestMargin = std::min(report.tightestMargin, p.lloydRhs - p.rateMax);

        const bool seen = std::any_of(report.asymptotes.begin(), report.asymptotes.end(), [&](const LloydAsymptotes& a) {
            return a.omega0 == p.omega0 && a.omegaC == p.omegaC && a.omegaR1 == p.omegaR1 &&
                   a.omegaR2 == p.omegaR2;
        });
        if (seen) continue;
        LloydAsymptotes a{p.omega0, p.omegaC, p.omegaR1, p.omegaR2};
        const ModeFrequencies freqs = normal_mode_frequencies(OscillatorParams{1.0, hbar, p.omega0, p.omegaC});
        const ReferenceFrequencies refs{p.omegaR1, p.omegaR2};
        a.groundEnergy = ground_state_energy(freqs, hbar);
        a.groundLloydRhs = lloyd_rhs(a.groundEnergy, hbar);
        const double window = default_rate_window(freqs);
        a.highTempRatePlateau = max_abs_high_temp_rate(freqs, refs, 0.0, window, auto_samples(freqs, window));
        report.asymptotes.push_back(a);
    }
    if (report.satisfied + report.violated == 0) report.tightestMargin = std::numeric_limits<double>::quiet_NaN();
    return report;
}

} // namespace tfd
