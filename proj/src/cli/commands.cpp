// commands.cpp — tfdcx subcommands and argument handling

#include "tfd/cli.hpp"

#include "tfd/errors.hpp"
#include "tfd/kernels.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>

namespace tfd::cli {

namespace {

// Data files always go through this; the sidecar keeps run metadata out of the data.
class OutputFile {
public:
    explicit OutputFile(const std::string& path) : path_(path)
    {
        if (!path_.empty()) {
            stream_.open(path_, std::ios::binary | std::ios::trunc);
            if (!stream_) throw ParameterError("cannot open output file '" + path_ + "'");
        }
    }

    bool enabled() const { return !path_.empty(); }
    std::ostream& stream() { return stream_; }

    void finish(const nlohmann::json& meta)
    {
        if (!enabled()) return;
        stream_.close();
        if (!stream_) throw NumericError("failed writing '" + path_ + "'");
        std::ofstream side(path_ + ".meta.json", std::ios::binary | std::ios::trunc);
        side << meta.dump(2) << '\n';
        if (!side) throw NumericError("failed writing '" + path_ + ".meta.json'");
    }

private:
    std::string path_;
    std::ofstream stream_;
};

nlohmann::json base_meta(const char* command, const RunConfig& cfg)
{
    const ModeFrequencies f = normal_mode_frequencies(cfg.params);
    nlohmann::json meta;
    meta["tool"] = "tfdcx";
    meta["command"] = command;
    meta["kernel"] = std::string(kernels::backend_name(kernels::default_backend()));
    meta["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
    meta["params"] = {{"omega0", cfg.params.omega0}, {"omegaC", cfg.params.omegaC},
                      {"omega1", f.omega1},          {"omega2", f.omega2},
                      {"mass", cfg.params.mass},     {"hbar", cfg.params.hbar},
                      {"beta", cfg.beta},            {"omegaR1", cfg.refs.omegaR1},
                      {"omegaR2", cfg.refs.omegaR2}};
    return meta;
}

void note_output(std::ostream& log, const OutputFile& file, const std::string& path)
{
    if (file.enabled()) {
        log << "wrote " << path << " (+ .meta.json)\n";
    } else {
        log << "no --out given; data not written\n";
    }
}

std::size_t auto_samples(const ModeFrequencies& f, double window, double lo, double hi)
{
    const double n = std::ceil(512.0 * window / (std::numbers::pi / f.omega1)) + 1.0;
    return static_cast<std::size_t>(std::clamp(n, lo, hi));
}

// Three of whichever is longer: the carrier period pi/omega2 or the beat
// period pi/(omega1 - omega2), the latter only when it is within 100 carriers.
double auto_period_window(const ModeFrequencies& f)
{
    const double carrier = std::numbers::pi / f.omega2;
    double longest = carrier;
    if (f.omega1 > f.omega2) {
        const double beat = std::numbers::pi / (f.omega1 - f.omega2);
        if (beat <= 100.0 * carrier) longest = std::max(longest, beat);
    }
    return 3.0 * longest;
}

} // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& log)
{
    const ModeFrequencies f = normal_mode_frequencies(cfg.params);
    const double hbar = cfg.params.hbar;
    OutputFile file(cfg.out);
    nlohmann::json rows = nlohmann::json::array();
    if (file.enabled() && cfg.format == OutputFormat::csv) file.stream() << kSpectrumHeader << '\n';
    for (int n = 0; n <= cfg.n_max; ++n) {
        for (int k = 0; k <= cfg.k_max; ++k) {
            const double e = energy_nk(n, k, f, hbar);
            if (!file.enabled()) continue;
            if (cfg.format == OutputFormat::csv) {
                file.stream() << n << ',' << k << ',' << (k - n) << ',' << format_double(e) << '\n';
            } else {
                rows.push_back({{"n", n}, {"k", k}, {"l", k - n}, {"E", e}});
            }
        }
    }
    if (file.enabled() && cfg.format == OutputFormat::json) file.stream() << rows.dump(1) << '\n';

    nlohmann::json meta = base_meta("spectrum", cfg);
    meta["n_max"] = cfg.n_max;
    meta["k_max"] = cfg.k_max;
    file.finish(meta);

    log << "omega1 = " << format_double(f.omega1) << ", omega2 = " << format_double(f.omega2) << '\n';
    log << (cfg.n_max + 1) * (cfg.k_max + 1) << " levels, E_00 = " << format_double(ground_state_energy(f, hbar))
        << '\n';
    note_output(log, file, cfg.out);
    return kExitOk;
}

int cmd_complexity(const RunConfig& cfg, std::ostream& log)
{
    const ModeFrequencies f = normal_mode_frequencies(cfg.params);
    const EvaluationContext ctx = make_context(cfg.params, ThermalParams{cfg.beta}, cfg.refs);
    const double t0 = cfg.t0.value_or(0.0);
    const double t1 = cfg.t1.value_or(t0 + 2.0 * default_rate_window(f));
    const std::size_t n = cfg.samples.value_or(4096);
    const std::vector<ComplexitySample> samples = sample_trajectory(ctx, t0, t1, n);

    OutputFile file(cfg.out);
    if (file.enabled()) {
        if (cfg.format == OutputFormat::csv) {
            write_series_csv(file.stream(), samples);
        } else {
            write_series_json(file.stream(), samples);
        }
    }
    nlohmann::json meta = base_meta("complexity", cfg);
    meta["window"] = {{"t0", t0}, {"t1", t1}, {"samples", n}};
    file.finish(meta);

    double cmin = samples.front().c, cmax = cmin, rmax = 0.0;
    for (const ComplexitySample& s : samples) {
        cmin = std::min(cmin, s.c);
        cmax = std::max(cmax, s.c);
        rmax = std::max(rmax, std::abs(s.cdot));
    }
    log << n << " samples on [" << format_double(t0) << ", " << format_double(t1) << "]\n";
    log << "C in [" << format_double(cmin) << ", " << format_double(cmax) << "], max |dC/dt| = "
        << format_double(rmax) << '\n';
    note_output(log, file, cfg.out);
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log)
{
    std::vector<GridPoint> grid;
    if (!cfg.grid_path.empty()) {
        if (cfg.betas) throw ParameterError("give either a grid file or a beta list, not both");
        std::ifstream in(cfg.grid_path);
        if (!in) throw ParameterError("cannot open grid file '" + cfg.grid_path + "'");
        grid = read_grid_csv(in);
    } else {
        const std::vector<double> betas = cfg.betas.value_or(std::vector<double>{cfg.beta});
        for (double b : betas) grid.push_back({b, cfg.params.omega0, cfg.params.omegaC});
    }
    if (grid.empty()) throw ParameterError("sweep grid is empty");

    SweepOptions opt;
    opt.refs = cfg.refs;
    opt.hbar = cfg.params.hbar;
    opt.mass = cfg.params.mass;
    opt.window_samples = cfg.window_samples;
    opt.window = cfg.window;
    opt.workers = cfg.workers;
    const std::vector<SweepPoint> rows = sweep(grid, opt);

    OutputFile file(cfg.out);
    if (file.enabled()) {
        if (cfg.format == OutputFormat::csv) {
            write_sweep_csv(file.stream(), rows);
        } else {
            write_sweep_json(file.stream(), rows);
        }
    }
    nlohmann::json meta = base_meta("sweep", cfg);
    meta["grid_points"] = grid.size();
    meta["window_samples"] = cfg.window_samples;
    meta["workers"] = cfg.workers;
    if (cfg.window) meta["window"] = *cfg.window;
    file.finish(meta);

    const LloydReport report = lloyd_report(rows, cfg.params.hbar);
    log << rows.size() << " points: " << report.satisfied << " satisfy the Lloyd bound, " << report.violated
        << " violate it, " << report.failed << " failed\n";
    if (report.satisfied + report.violated > 0) {
        log << "tightest margin lloydRhs - rateMax = " << format_double(report.tightestMargin) << '\n';
    }
    for (const LloydAsymptotes& a : report.asymptotes) {
        log << "omega0 = " << format_double(a.omega0) << ", omegaC = " << format_double(a.omegaC)
            << ": E_00 = " << format_double(a.groundEnergy) << ", lloyd_rhs(E_00) = " << format_double(a.groundLloydRhs)
            << ", high-T rate plateau = " << format_double(a.highTempRatePlateau) << '\n';
    }
    for (const SweepPoint& r : rows) {
        if (!r.ok()) log << "beta = " << format_double(r.beta) << " failed: " << r.error << '\n';
    }
    note_output(log, file, cfg.out);
    return report.failed == rows.size() ? kExitNumeric : kExitOk;
}

int cmd_period(const RunConfig& cfg, std::ostream& log)
{
    const ModeFrequencies f = normal_mode_frequencies(cfg.params);
    const EvaluationContext ctx = make_context(cfg.params, ThermalParams{cfg.beta}, cfg.refs);
    const double t0 = cfg.t0.value_or(0.0);
    const double t1 = cfg.t1.value_or(t0 + auto_period_window(f));
    const std::size_t n = cfg.samples.value_or(auto_samples(f, t1 - t0, 4096.0, 2097152.0));

    const TimeSeries series = sample_series(ctx, t0, t1, n);
    const PeriodEstimate carrier = estimate_period(series);
    std::optional<PeriodEstimate> beat;
    try {
        const PeriodEstimate b = estimate_beat_period(series);
        if (b.confidence >= 0.5) beat = b;
    } catch (const InsufficientDataError&) {
    }

    nlohmann::json doc;
    doc["carrier_period"] = carrier.period;
    doc["carrier_confidence"] = carrier.confidence;
    if (beat) {
        doc["beat_period"] = beat->period;
        doc["beat_confidence"] = beat->confidence;
    }
    OutputFile file(cfg.out);
    if (file.enabled()) file.stream() << doc.dump(2) << '\n';
    nlohmann::json meta = base_meta("period", cfg);
    meta["window"] = {{"t0", t0}, {"t1", t1}, {"samples", n}};
    file.finish(meta);

    log << "carrier period = " << format_double(carrier.period) << " (confidence "
        << format_double(carrier.confidence) << "); pi/omega2 = " << format_double(std::numbers::pi / f.omega2)
        << '\n';
    if (beat) {
        log << "beat period = " << format_double(beat->period) << " (confidence " << format_double(beat->confidence)
            << "); pi/(omega1 - omega2) = " << format_double(std::numbers::pi / (f.omega1 - f.omega2)) << '\n';
    } else {
        log << "no beat detected\n";
    }
    note_output(log, file, cfg.out);
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Nielsen complexity of thermofield-double states of a charged oscillator in a magnetic field"};
    app.name("tfdcx");
    app.require_subcommand(1);

    std::map<std::string, std::string> raw;
    std::string config_path;
    struct Flag {
        std::string key;
        CLI::App* owner;
        CLI::Option* option;
    };
    std::vector<Flag> options;

    auto add = [&](CLI::App* sub, const std::string& key, const std::string& help) {
        options.push_back({key, sub, sub->add_option("--" + key, raw[sub->get_name() + "/" + key], help)});
    };
    auto add_common = [&](CLI::App* sub) {
        add(sub, "omega0", "trap frequency (default 0.1)");
        add(sub, "omegac", "cyclotron frequency (default 0)");
        add(sub, "charge", "charge e; with --bfield replaces --omegac");
        add(sub, "bfield", "magnetic field B");
        add(sub, "mass", "mass m (default 1)");
        add(sub, "omega1", "higher normal-mode frequency; with --omega2 replaces omega0/omegac");
        add(sub, "omega2", "lower normal-mode frequency");
        add(sub, "beta", "inverse temperature (default 1)");
        add(sub, "omega-ref1", "reference frequency of mode 1 (default 1)");
        add(sub, "omega-ref2", "reference frequency of mode 2 (default 1)");
        add(sub, "hbar", "reduced Planck constant (default 1)");
        add(sub, "out", "output data file");
        add(sub, "format", "csv or json (default csv)");
        sub->add_option("--config", config_path, "key=value settings file (fallback: $TFD_CONFIG)");
    };
    auto add_window = [&](CLI::App* sub) {
        add(sub, "t0", "window start (default 0)");
        add(sub, "t1", "window end");
        add(sub, "samples", "grid points in the window");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "energy levels E_{n,k}");
    add_common(spectrum);
    add(spectrum, "n-max", "largest n (default 2)");
    add(spectrum, "k-max", "largest k (default 2)");

    CLI::App* complexity = app.add_subcommand("complexity", "C(t) and dC/dt on a time grid");
    add_common(complexity);
    add_window(complexity);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "max complexity and rate over a parameter grid, Lloyd report");
    add_common(sweep_cmd);
    add(sweep_cmd, "betas", "comma-separated beta values");
    add(sweep_cmd, "beta-log", "log-spaced betas as min:max:count");
    add(sweep_cmd, "grid", "CSV file with beta,omega0,omegaC rows");
    add(sweep_cmd, "workers", "worker threads (default 1)");
    add(sweep_cmd, "window", "search window when omega1/omega2 is not rational");
    add(sweep_cmd, "window-samples", "grid points per window (default 512 per pi/omega1)");

    CLI::App* period = app.add_subcommand("period", "carrier and beat periods of C(t)");
    add_common(period);
    add_window(period);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
        Settings flags;
        const std::string prefix = chosen->get_name() + "/";
        for (const Flag& f : options) {
            if (f.owner == chosen && f.option->count() > 0) flags[f.key] = raw[prefix + f.key];
        }
        Settings file_settings;
        if (!config_path.empty()) {
            file_settings = load_config_file(config_path);
        } else if (const char* env = std::getenv("TFD_CONFIG"); env && *env) {
            file_settings = load_config_file(env);
        }
        const RunConfig cfg = resolve(file_settings, flags);

        const std::string name = chosen->get_name();
        if (name == "spectrum") return cmd_spectrum(cfg, out);
        if (name == "complexity") return cmd_complexity(cfg, out);
        if (name == "sweep") return cmd_sweep(cfg, out);
        return cmd_period(cfg, out);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    }
}

} // namespace tfd::cli
