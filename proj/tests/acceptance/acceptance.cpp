// acceptance.cpp — end-to-end acceptance checks, one PASS/FAIL line per criterion.
//
//   tfd_acceptance            run everything
//   tfd_acceptance --only X   run criterion X
//   tfd_acceptance --list     print criterion names

#include "tfd/analysis.hpp"
#include "tfd/complexity.hpp"
#include "tfd/covariance.hpp"
#include "tfd/errors.hpp"
#include "tfd/kernels.hpp"
#include "tfd/model.hpp"
#include "tfd/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace tfd;
using std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    // Records a sub-check; the first failing one is named in the detail.
    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) detail << "failed: " << what << "; ";
        pass = pass && ok;
    }
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

private:
    std::mt19937_64 gen_;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double rel_dev(double a, double b) { return std::abs(a - b) / std::abs(b); }

EvaluationContext context(double w1, double w2, double beta, double wr1 = 1.0, double wr2 = 1.0)
{
    return make_context(ModeFrequencies{w1, w2}, ThermalParams{beta}, ReferenceFrequencies{wr1, wr2});
}

void oracle_equivalence(Outcome& out)
{
    Rng rng(1001);
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const OscillatorParams p{1.0, 1.0, rng.log_uniform(1e-3, 1e2), rng.log_uniform(1e-3, 1e2)};
        const double beta = rng.log_uniform(1e-3, 1e3);
        const ReferenceFrequencies refs{rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0)};
        const double t = rng.uniform(0.0, 1e3);
        const EvaluationContext ctx = make_context(p, ThermalParams{beta}, refs);
        worst = std::max(worst, std::abs(complexity_at(ctx, t) - oracle::complexity_bruteforce(ctx, t)));
    }
    const double elapsed = seconds_since(start);
    out.require(worst <= 1e-10, "max |C - C_oracle| <= 1e-10");
    out.require(elapsed < 10.0, "runtime < 10 s");
    out.detail << "1000 draws, max abs diff " << worst << ", " << elapsed << " s";
}

void matched_reference(Outcome& out)
{
    double spread = 0.0, closed = 0.0;
    for (const auto& [w1, w2] : {std::pair{0.1, 0.005}, std::pair{0.1, 0.09}, std::pair{0.0998, 0.00485}}) {
        for (double beta : {0.1, 1.0, 10.0}) {
            const EvaluationContext ctx = context(w1, w2, beta, w1, w2);
            const double window = 2.0 * pi / w2;
            double lo = INFINITY, hi = -INFINITY;
            for (int j = 0; j < 10000; ++j) {
                const double c = complexity_at(ctx, window * j / 9999.0);
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            spread = std::max(spread, hi - lo);
            const double a1 = std::atanh(std::exp(-beta * w1 / 2.0));
            const double a2 = std::atanh(std::exp(-beta * w2 / 2.0));
            closed = std::max(closed, std::abs(hi - 2.0 * std::hypot(a1, a2)));
        }
    }
    out.require(spread < 1e-12, "max - min < 1e-12 over 1e4 samples");
    out.require(closed <= 1e-12, "C = 2 sqrt(a1^2 + a2^2)");

    double zero_field = 0.0;
    for (double beta : {0.5, 5.0, 50.0}) {
        const OscillatorParams p{1.0, 1.0, 0.1, 0.0};
        const ModeFrequencies f = normal_mode_frequencies(p);
        const EvaluationContext ctx = make_context(p, ThermalParams{beta}, ReferenceFrequencies{f.omega1, f.omega2});
        const double expect = 2.0 * std::sqrt(2.0) * std::atanh(std::exp(-beta * 0.1 / 2.0));
        zero_field = std::max(zero_field, std::abs(complexity_at(ctx, 17.0) - expect));
    }
    out.require(zero_field <= 1e-12, "zero-field value");
    out.detail << "spread " << spread << ", closed-form diff " << closed << ", zero-field diff " << zero_field;
}

void zero_temperature(Outcome& out)
{
    const OscillatorParams p{1.0, 1.0, 0.022, 0.095};
    const EvaluationContext ctx = make_context(p, ThermalParams{1e6}, ReferenceFrequencies{1.0, 1.0});
    const double limit = complexity_zero_temp_limit(ctx.freqs, ctx.refs);
    Rng rng(1002);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(0.0, 2.0 * pi / ctx.freqs.omega2);
        worst = std::max(worst, rel_dev(complexity_at(ctx, t), limit));
    }
    out.require(worst <= 1e-5, "relative deviation <= 1e-5");
    out.detail << "omega = (" << ctx.freqs.omega1 << ", " << ctx.freqs.omega2 << "), limit " << limit
               << ", max rel dev " << worst;
}

void high_temperature(Outcome& out)
{
    const double beta = 1e-6;
    const EvaluationContext ctx = context(0.1, 0.09, beta);
    Rng rng(1003);
    double c_worst = 0.0, rate_worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(0.0, 2.0 * pi / ctx.freqs.omega2);
        c_worst = std::max(c_worst, rel_dev(complexity_at(ctx, t), complexity_high_temp_approx(ctx, t, beta)));
        rate_worst = std::max(rate_worst,
                              rel_dev(complexity_rate_at(ctx, t), rate_high_temp_limit(ctx.freqs, ctx.refs, t)));
    }
    out.require(c_worst <= 1e-3, "C vs high-temperature form <= 1e-3");
    out.require(rate_worst <= 1e-3, "rate vs beta -> 0 limit <= 1e-3");
    out.detail << "C max rel dev " << c_worst << ", rate max rel dev " << rate_worst;
}

void rate_consistency(Outcome& out)
{
    Rng rng(1004);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double w1 = rng.log_uniform(1e-2, 1.0);
        const double w2 = w1 * rng.uniform(0.01, 1.0);
        const EvaluationContext ctx = context(w1, w2, rng.log_uniform(0.1, 100.0), rng.uniform(0.2, 5.0),
                                              rng.uniform(0.2, 5.0));
        const double t = rng.uniform(0.0, 500.0);
        worst = std::max(worst, std::abs(complexity_rate_at(ctx, t) - oracle::rate_fd(ctx, t, 1e-6)));
    }
    out.require(worst <= 1e-6, "|rate - finite difference| <= 1e-6");
    out.detail << "200 points, max abs diff " << worst;
}

void lloyd_bound(Outcome& out)
{
    const auto start = std::chrono::steady_clock::now();
    SweepOptions options;
    options.workers = std::max(1u, std::thread::hardware_concurrency());
    for (const auto& [name, w1, w2] : {std::tuple{"6a", 0.1, 0.005}, std::tuple{"6b", 0.1, 0.09}}) {
        const OscillatorParams p = OscillatorParams::from_modes(w1, w2);
        std::vector<GridPoint> grid;
        for (int i = 0; i < 60; ++i) {
            grid.push_back({std::pow(10.0, -2.0 + 5.0 * i / 59.0), p.omega0, p.omegaC});
        }
        const std::vector<SweepPoint> rows = sweep(grid, options);
        double margin = INFINITY;
        bool all_ok = true;
        for (const SweepPoint& r : rows) {
            all_ok = all_ok && r.ok();
            if (r.ok()) margin = std::min(margin, r.lloydRhs - r.rateMax);
        }
        out.require(all_ok, std::string(name) + " every point evaluated");
        out.require(margin >= -1e-12, std::string(name) + " margin >= -1e-12");
        out.detail << name << " min margin " << margin << ", ";
    }
    const double elapsed = seconds_since(start);
    out.require(elapsed < 60.0, "runtime < 60 s");
    out.detail << elapsed << " s";
}

void period_recovery(Outcome& out)
{
    const EvaluationContext strong = context(0.1, 0.005, 0.5);
    const PeriodEstimate s = estimate_period(sample_series(strong, 0.0, 3.0 * pi / 0.005, 30721));
    out.require(rel_dev(s.period, pi / 0.005) <= 0.02, "strong-field period within 2%");

    Rng rng(1005);
    double drift = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double t = rng.uniform(0.0, 2000.0);
        drift = std::max(drift, std::abs(complexity_at(strong, t + pi / 0.005) - complexity_at(strong, t)));
    }
    out.require(drift <= 1e-12, "C(t + pi/omega2) = C(t)");

    const EvaluationContext weak = context(0.1, 0.09, 0.5);
    const PeriodEstimate b = estimate_beat_period(sample_series(weak, 0.0, 3.0 * pi / 0.01, 15361));
    out.require(rel_dev(b.period, pi / 0.01) <= 0.10, "weak-field beat within 10%");

    const EvaluationContext zero = make_context(OscillatorParams{1.0, 1.0, 0.1, 0.0}, ThermalParams{0.5});
    const PeriodEstimate z = estimate_period(sample_series(zero, 0.0, 3.0 * pi / 0.1, 1537));
    out.require(rel_dev(z.period, pi / 0.1) <= 0.02, "zero-field period within 2%");

    out.detail << "strong " << s.period << " (" << pi / 0.005 << "), periodicity " << drift << ", beat " << b.period
               << " (" << pi / 0.01 << "), zero field " << z.period << " (" << pi / 0.1 << ")";
}

void thermodynamics(Outcome& out)
{
    double z_worst = 0.0;
    for (const auto& [w1, w2, beta] : {std::tuple{0.1, 0.005, 1.0}, std::tuple{0.1, 0.09, 10.0},
                                        std::tuple{0.0998, 0.00485, 3.0}, std::tuple{1.0, 0.5, 0.7}}) {
        const ModeFrequencies f{w1, w2};
        z_worst = std::max(z_worst, rel_dev(oracle::partition_series(f, beta, 1.0, 1e-14),
                                            partition_function(f, ThermalParams{beta})));
    }
    out.require(z_worst <= 1e-12, "Z vs series <= 1e-12");

    double u_worst = 0.0;
    for (const ModeFrequencies f : {ModeFrequencies{0.1, 0.005}, ModeFrequencies{0.1, 0.09}}) {
        for (int i = 0; i < 21; ++i) {
            const double beta = std::pow(10.0, -2.0 + 5.0 * i / 20.0);
            u_worst = std::max(u_worst, rel_dev(internal_energy(f, ThermalParams{beta}),
                                                oracle::internal_energy_fd(f, beta, 1.0, 1e-6)));
        }
    }
    out.require(u_worst <= 1e-6, "U vs finite difference <= 1e-6");

    double ground_worst = 0.0;
    for (const ModeFrequencies f : {ModeFrequencies{0.1, 0.005}, ModeFrequencies{0.1, 0.09}}) {
        ground_worst = std::max(ground_worst, rel_dev(internal_energy(f, ThermalParams{1e6}),
                                                      (f.omega1 + f.omega2) / 2.0));
    }
    out.require(ground_worst <= 1e-8, "U(1e6) -> (w1 + w2)/2");
    out.detail << "Z rel " << z_worst << ", U rel " << u_worst << ", ground rel " << ground_worst;
}

void structural_invariants(Outcome& out)
{
    Rng rng(1006);
    double det_worst = 0.0, recip_worst = 0.0, mass_worst = 0.0, k_worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform(0.0, 1.5);
        const double w = rng.log_uniform(1e-2, 1e1);
        const double wr = rng.log_uniform(0.1, 10.0);
        const double m = rng.log_uniform(0.5, 2.0);
        const double t = rng.uniform(0.0, 100.0);
        for (Sign s : {Sign::plus, Sign::minus}) {
            const CovarianceBlock g = target_block(a, s, w, m, t);
            const Mat2 rel = relative_block(g, wr, m);
            det_worst = std::max({det_worst, std::abs(g.det() - 1.0), std::abs(rel.det() - 1.0)});

            const EigenPair e = relative_eigenvalues(sector_A(a, w, wr, s, t));
            recip_worst = std::max(recip_worst, std::abs(e.e_minus * e.e_plus - 1.0));

            const double ref = 0.5 * relative_block(target_block(a, s, w, 1.0, t), wr, 1.0).trace();
            mass_worst = std::max(mass_worst, std::abs(0.5 * rel.trace() - ref) / ref);
        }
        const Mat2 k = k_generator_matrix(w, m, t);
        const Mat2 k2 = k * k;
        k_worst = std::max({k_worst, std::abs(k2.m00 - 1.0), std::abs(k2.m01), std::abs(k2.m10),
                            std::abs(k2.m11 - 1.0)});
    }
    // eight eigenvalues of the full relative matrix
    for (int i = 0; i < 100; ++i) {
        const EvaluationContext ctx = context(rng.log_uniform(1e-2, 1.0), rng.log_uniform(1e-3, 1e-2),
                                              rng.log_uniform(0.1, 100.0), rng.uniform(0.2, 5.0),
                                              rng.uniform(0.2, 5.0));
        const std::array<double, 8> e = oracle::relative_eigenvalues_full(ctx, rng.uniform(0.0, 1e3));
        for (std::size_t b = 0; b < 8; b += 2) recip_worst = std::max(recip_worst, std::abs(e[b] * e[b + 1] - 1.0));
    }
    out.require(det_worst <= 1e-12, "det = 1");
    out.require(recip_worst <= 1e-12, "reciprocal eigenvalue pairs");
    out.require(mass_worst <= 1e-12, "mass independence");
    out.require(k_worst <= 1e-12, "K^2 = I");
    out.detail << "det " << det_worst << ", reciprocal " << recip_worst << ", mass " << mass_worst << ", K^2 "
               << k_worst;
}

struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all{
        {"oracle_equivalence", oracle_equivalence}, {"matched_reference", matched_reference},
        {"zero_temperature", zero_temperature},     {"high_temperature", high_temperature},
        {"rate_consistency", rate_consistency},     {"lloyd_bound", lloyd_bound},
        {"period_recovery", period_recovery},       {"thermodynamics", thermodynamics},
        {"structural_invariants", structural_invariants},
    };
    return all;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance checks"};
    std::string only;
    bool list = false;
    app.add_option("--only", only, "run a single criterion");
    app.add_flag("--list", list, "print criterion names");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const Criterion& c : criteria()) std::printf("%s\n", c.name);
        return 0;
    }

    const std::string_view kernel = tfd::kernels::backend_name(tfd::kernels::default_backend());
    std::printf("kernel: %.*s\n", static_cast<int>(kernel.size()), kernel.data());
    int failed = 0, ran = 0;
    for (const Criterion& c : criteria()) {
        if (!only.empty() && only != c.name) continue;
        ++ran;
        Outcome out;
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << "exception: " << e.what();
        }
        failed += out.pass ? 0 : 1;
        std::printf("%s %s: %s\n", out.pass ? "PASS" : "FAIL", c.name, out.detail.str().c_str());
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
        return 2;
    }
    return failed == 0 ? 0 : 1;
}
